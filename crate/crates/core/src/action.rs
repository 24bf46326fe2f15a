//! The unitriangular group, its adjoint action on tuples, and the
//! elementary one-parameter transformation rules for the minor families.

use thiserror::Error;

use crate::matrix::{Matrix, MatrixTuple};
use crate::ring::Ring;
use crate::rng::{random_scalar, SplitMix64};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionError {
    #[error("dimension mismatch: group element is {group}x{group}, tuple is {tuple}x{tuple}")]
    DimensionMismatch { group: usize, tuple: usize },
    #[error("matrix is not unitriangular")]
    NotUnitriangular,
}

/// Upper triangular matrix with unit diagonal. Only the strictly upper
/// entries are stored, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitriangularMatrix {
    n: usize,
    field: FieldSpec,
    upper: Vec<Scalar>,
}

impl UnitriangularMatrix {
    pub fn identity(n: usize, field: FieldSpec) -> Self {
        assert!(n >= 1);
        UnitriangularMatrix {
            n,
            field,
            upper: vec![Scalar::zero(field); n * (n - 1) / 2],
        }
    }

    /// `I + t·E_{a,a+1}` for the simple position `(a, a+1)`; this is the
    /// exact exponential `exp(t E)` since `E² = 0`. Requires
    /// `1 <= a <= n-1`.
    pub fn elementary(a: usize, t: Scalar, n: usize) -> Self {
        assert!(a >= 1 && a < n, "simple position {a} out of range [1, {}]", n - 1);
        let mut u = UnitriangularMatrix::identity(n, t.field());
        u.set_above(a, a + 1, t);
        u
    }

    /// Deterministic random element: strictly upper entries drawn from
    /// the stream documented in [`crate::rng`].
    pub fn random(n: usize, field: FieldSpec, seed: u64) -> Self {
        Self::from_rng(n, field, &mut SplitMix64::new(seed))
    }

    pub fn from_rng(n: usize, field: FieldSpec, rng: &mut SplitMix64) -> Self {
        let mut u = UnitriangularMatrix::identity(n, field);
        for a in 1..=n {
            for b in a + 1..=n {
                u.set_above(a, b, random_scalar(field, rng));
            }
        }
        u
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    fn upper_index(&self, a: usize, b: usize) -> usize {
        debug_assert!(a >= 1 && a < b && b <= self.n);
        // Row a holds n - a entries starting after the first a-1 rows.
        let before: usize = (1..a).map(|r| self.n - r).sum();
        before + (b - a - 1)
    }

    /// Full-matrix entry semantics: unit diagonal, zero below.
    pub fn entry(&self, a: usize, b: usize) -> Scalar {
        assert!(a >= 1 && a <= self.n && b >= 1 && b <= self.n);
        if a == b {
            Scalar::one(self.field)
        } else if a < b {
            self.upper[self.upper_index(a, b)].clone()
        } else {
            Scalar::zero(self.field)
        }
    }

    pub fn set_above(&mut self, a: usize, b: usize, value: Scalar) {
        assert!(a < b, "only strictly upper entries are free");
        assert_eq!(value.field(), self.field);
        let idx = self.upper_index(a, b);
        self.upper[idx] = value;
    }

    pub fn to_matrix(&self) -> Matrix<Scalar> {
        Matrix::from_fn(self.n, |i, j| self.entry(i, j))
    }

    pub fn from_matrix(m: &Matrix<Scalar>) -> Result<Self, ActionError> {
        let n = m.n();
        let mut u = UnitriangularMatrix::identity(n, m.field());
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    if m.entry(i, j) != &Scalar::one(m.field()) {
                        return Err(ActionError::NotUnitriangular);
                    }
                } else if i > j {
                    if !m.entry(i, j).is_zero() {
                        return Err(ActionError::NotUnitriangular);
                    }
                } else {
                    u.set_above(i, j, m.entry(i, j).clone());
                }
            }
        }
        Ok(u)
    }

    /// Group product, in the compact representation.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let mut out = UnitriangularMatrix::identity(self.n, self.field);
        for a in 1..=self.n {
            for b in a + 1..=self.n {
                // (uv)_{ab} = Σ_{a <= r <= b} u_{ar} v_{rb}
                let mut acc = Scalar::zero(self.field);
                for r in a..=b {
                    acc = acc.add(&self.entry(a, r).mul(&rhs.entry(r, b)));
                }
                out.set_above(a, b, acc);
            }
        }
        out
    }

    /// Exact group inverse via the terminating Neumann series
    /// `(I + N)⁻¹ = I − N + N² − ...` for the strictly upper part `N`.
    pub fn inverse(&self) -> Self {
        let id = Matrix::identity(self.n, self.field);
        let nil = self.to_matrix().sub(&id);
        let mut acc = id.clone();
        let mut term = id;
        for step in 1..self.n {
            term = term.mul(&nil);
            acc = if step % 2 == 1 {
                acc.sub(&term)
            } else {
                acc.add(&term)
            };
        }
        UnitriangularMatrix::from_matrix(&acc).expect("inverse stays in the group")
    }
}

/// Conjugate a single matrix: `u X u⁻¹`.
pub fn adjoint_matrix(u: &UnitriangularMatrix, x: &Matrix<Scalar>) -> Result<Matrix<Scalar>, ActionError> {
    if u.n() != x.n() {
        return Err(ActionError::DimensionMismatch { group: u.n(), tuple: x.n() });
    }
    let um = u.to_matrix();
    let uinv = u.inverse().to_matrix();
    Ok(um.mul(x).mul(&uinv))
}

/// Componentwise conjugation of a tuple: `(u X_1 u⁻¹, ..., u X_m u⁻¹)`.
pub fn adjoint_tuple(u: &UnitriangularMatrix, t: &MatrixTuple) -> Result<MatrixTuple, ActionError> {
    if u.n() != t.n() {
        return Err(ActionError::DimensionMismatch { group: u.n(), tuple: t.n() });
    }
    let um = u.to_matrix();
    let uinv = u.inverse().to_matrix();
    let components = t
        .components()
        .iter()
        .map(|x| um.mul(x).mul(&uinv))
        .collect();
    Ok(MatrixTuple::new(components).expect("conjugation preserves shape"))
}

/// Which minor family a transformation-rule case belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinorFamily {
    M,
    N,
}

#[derive(Debug, Clone)]
pub struct ActionRuleCase {
    pub family: MinorFamily,
    /// `(i, j)` for family M, `(j, k)` for family N.
    pub indices: (usize, usize),
    pub expected: Scalar,
    pub actual: Scalar,
}

impl ActionRuleCase {
    pub fn ok(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone)]
pub struct ElementaryActionReport {
    pub n: usize,
    pub simple_position: usize,
    pub cases: Vec<ActionRuleCase>,
}

impl ElementaryActionReport {
    pub fn all_pass(&self) -> bool {
        self.cases.iter().all(|c| c.ok())
    }

    pub fn failures(&self) -> impl Iterator<Item = &ActionRuleCase> {
        self.cases.iter().filter(|c| !c.ok())
    }
}

/// Checks the one-parameter transformation rules for every valid minor
/// index pair, with the function-action convention
/// `ρ_a(t) f(X) = f(s_a(t)⁻¹ X s_a(t))`:
///
/// * `ρ_a(t) M_ij(X) = M_{i,a+1}(X) + t·M_{ia}(X)` when `i' < j = a+1`,
///   and `M_ij(X)` otherwise;
/// * `ρ_a(t) N_jk(Y) = N_{ak}(Y) − t·N_{a+1,k}(Y)` when `j = a < k`,
///   and `N_jk(Y)` otherwise.
///
/// Failures are reported, not thrown.
pub fn check_elementary_action(
    x: &Matrix<Scalar>,
    y: &Matrix<Scalar>,
    a: usize,
    t: &Scalar,
) -> ElementaryActionReport {
    check_elementary_action_with(x, y, a, t, false)
}

/// Internal variant able to flip the convention to `f(g X g⁻¹)`; the
/// flipped form is used as a negative control pinning the convention.
pub(crate) fn check_elementary_action_with(
    x: &Matrix<Scalar>,
    y: &Matrix<Scalar>,
    a: usize,
    t: &Scalar,
    flip_convention: bool,
) -> ElementaryActionReport {
    let n = x.n();
    assert_eq!(n, y.n());
    assert!(a >= 1 && a < n);
    let s = UnitriangularMatrix::elementary(a, t.clone(), n).to_matrix();
    let s_inv = UnitriangularMatrix::elementary(a, t.neg(), n).to_matrix();
    let (left, right) = if flip_convention {
        (&s, &s_inv)
    } else {
        (&s_inv, &s)
    };
    let cx = left.mul(x).mul(right);
    let cy = left.mul(y).mul(right);

    let mut cases = Vec::new();
    for i in 1..=n {
        let ip = n + 1 - i;
        for j in ip..=n {
            let actual = cx.minor_m(i, j).expect("valid M pair");
            let expected = if ip < j && j == a + 1 {
                let base = x.minor_m(i, a + 1).expect("valid M pair");
                let shifted = x.minor_m(i, a).expect("i' <= a when i' < a+1");
                base.add(&t.mul(&shifted))
            } else {
                x.minor_m(i, j).expect("valid M pair")
            };
            cases.push(ActionRuleCase {
                family: MinorFamily::M,
                indices: (i, j),
                expected,
                actual,
            });
        }
    }
    for j in 1..=n {
        for k in j..=n {
            let actual = cy.minor_n(j, k).expect("valid N pair");
            let expected = if j == a && a < k {
                let base = y.minor_n(a, k).expect("valid N pair");
                let shifted = y.minor_n(a + 1, k).expect("a+1 <= k when a < k");
                base.sub(&t.mul(&shifted))
            } else {
                y.minor_n(j, k).expect("valid N pair")
            };
            cases.push(ActionRuleCase {
                family: MinorFamily::N,
                indices: (j, k),
                expected,
                actual,
            });
        }
    }
    ElementaryActionReport { n, simple_position: a, cases }
}
