//! Canonical section representatives of generic orbits.
//!
//! The section consists of matrices that vanish strictly above the
//! anti-diagonal (`i + j <= n`); for tuples only the first component is
//! constrained. A tuple is in general position when the corner minors
//! `D_2, ..., D_n` of its first component are nonzero; exactly then a
//! unique unitriangular conjugation moves it into the section, entirely
//! independent of where on the orbit it started. On the section the
//! invariants reduce to signed monomial expressions, which yields an
//! explicit reconstruction of the single-matrix case from invariant
//! values and a triangular recovery of the `N`-minor table of a second
//! component.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::action::{adjoint_tuple, UnitriangularMatrix};
use crate::invariants::{GeneratorLabel, InvariantVector};
use crate::matrix::{index_prime, solve_any, solve_square, Matrix, MatrixTuple};
use crate::ring::Ring;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CanonicalError {
    #[error("tuple is not in general position: {0}")]
    NotGeneric(GenericityReport),
    #[error("corner value D_{k} is zero; reconstruction needs D_2..D_n nonzero")]
    ZeroCorner { k: usize },
    #[error("invariant vector is missing generator {0}")]
    MissingGenerator(GeneratorLabel),
    #[error("matrix does not have the section zero pattern")]
    NotSectionShape,
    #[error("input table is missing value for ({0}, {1})")]
    MissingTableEntry(usize, usize),
}

/// Per-corner genericity flags for the first component of a tuple:
/// `D_k != 0` for `k` in `[2, n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityReport {
    n: usize,
    nonzero: Vec<bool>,
}

impl GenericityReport {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Flag for `k` in `[2, n]`.
    pub fn corner_nonzero(&self, k: usize) -> bool {
        assert!(k >= 2 && k <= self.n);
        self.nonzero[k - 2]
    }

    pub fn is_generic(&self) -> bool {
        self.nonzero.iter().all(|&b| b)
    }

    /// Indices `k` with `D_k = 0`.
    pub fn vanishing(&self) -> Vec<usize> {
        (2..=self.n)
            .filter(|&k| !self.corner_nonzero(k))
            .collect()
    }
}

impl std::fmt::Display for GenericityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.n < 2 {
            write!(f, "generic (no corner minor conditions at n = 1)")
        } else if self.is_generic() {
            write!(f, "generic (D_2..D_{} nonzero)", self.n)
        } else {
            write!(f, "vanishing corner minors at k = {:?}", self.vanishing())
        }
    }
}

pub fn genericity_report(x: &Matrix<Scalar>) -> GenericityReport {
    let n = x.n();
    let nonzero = (2..=n)
        .map(|k| !x.corner_d(k).expect("k in range").is_zero())
        .collect();
    GenericityReport { n, nonzero }
}

/// True iff every entry strictly above the anti-diagonal (`i + j <= n`)
/// is zero.
pub fn is_section_shape<T: Ring>(x: &Matrix<T>) -> bool {
    let n = x.n();
    (1..=n).all(|i| (1..=n).all(|j| i + j > n || x.entry(i, j).is_zero()))
}

/// A tuple whose first component has the section zero pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionTuple {
    first: Matrix<Scalar>,
    rest: Vec<Matrix<Scalar>>,
}

impl SectionTuple {
    pub fn from_tuple(t: MatrixTuple) -> Result<Self, CanonicalError> {
        if !is_section_shape(t.component(1)) {
            return Err(CanonicalError::NotSectionShape);
        }
        let mut comps = t.components().to_vec();
        let first = comps.remove(0);
        Ok(SectionTuple { first, rest: comps })
    }

    pub fn first(&self) -> &Matrix<Scalar> {
        &self.first
    }

    pub fn rest(&self) -> &[Matrix<Scalar>] {
        &self.rest
    }

    pub fn to_tuple(&self) -> MatrixTuple {
        let mut comps = Vec::with_capacity(self.rest.len() + 1);
        comps.push(self.first.clone());
        comps.extend(self.rest.iter().cloned());
        MatrixTuple::new(comps).expect("components already validated")
    }
}

/// Conjugates a generic tuple into the section.
///
/// For each row `i` from `n-1` down to 1 independently, the strictly
/// upper entries `u_{i,i+1..n}` solve the square linear system
/// `X_1[i,c] + Σ_{r>i} u_{ir} X_1[r,c] = 0` for `c` in `[1, n-i]`, whose
/// coefficient determinant is the corner minor `D_{i+1}(X_1)`. Under
/// genericity each system is uniquely solvable, so the conjugator and the
/// resulting section tuple are unique; the section output depends only on
/// the orbit, not the representative.
pub fn bring_to_section(
    t: &MatrixTuple,
) -> Result<(UnitriangularMatrix, SectionTuple), CanonicalError> {
    let x1 = t.component(1);
    let report = genericity_report(x1);
    if !report.is_generic() {
        return Err(CanonicalError::NotGeneric(report));
    }
    let n = t.n();
    let field = t.field();
    let mut u = UnitriangularMatrix::identity(n, field);
    for i in (1..n).rev() {
        let width = n - i;
        let rows: Vec<Vec<Scalar>> = (1..=width)
            .map(|c| (i + 1..=n).map(|r| x1.entry(r, c).clone()).collect())
            .collect();
        let rhs: Vec<Scalar> = (1..=width).map(|c| x1.entry(i, c).neg()).collect();
        let sol = solve_square(rows, rhs)
            .expect("coefficient determinant D_{i+1} is nonzero under genericity");
        for (offset, value) in sol.into_iter().enumerate() {
            u.set_above(i, i + 1 + offset, value);
        }
    }
    let conj = adjoint_tuple(&u, t).expect("dimensions match");
    let section = SectionTuple::from_tuple(conj)
        .expect("conjugation by the solved element produces the section pattern");
    Ok((u, section))
}

/// Sign tables pinned by this library's minor conventions.
///
/// On a section matrix `S`:
///
/// * `D_k(S) = eps(k) · Π_{r=k..n} s_{r,r'}` — the corner submatrix is
///   anti-triangular, so its determinant is the reversal-permutation sign
///   `(−1)^{k'(k'−1)/2}` times the anti-diagonal product;
/// * `M_ik(S) = eta(i,k) · D_{i+1}(S) · s_{ik}` for `i' < k` — expansion
///   along the first row of the minor, whose only nonzero entry is
///   `s_{ik}` in the last column, gives `eta(i,k) = (−1)^{n−i}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignTables {
    n: usize,
    eps: Vec<i8>,
}

impl SignTables {
    /// `eps(k)` for `k` in `[1, n+1]`; `eps(n+1) = +1` matches the empty
    /// corner minor `D_{n+1} = 1`.
    pub fn eps(&self, k: usize) -> i8 {
        assert!(k >= 1 && k <= self.n + 1);
        self.eps[k - 1]
    }

    /// `eta(i, k)` for a pair strictly below the anti-diagonal.
    pub fn eta(&self, i: usize, k: usize) -> i8 {
        assert!(
            index_prime(i, self.n) < k && k <= self.n,
            "eta needs i' < k <= n"
        );
        if (self.n - i) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn apply(sign: i8, s: &Scalar) -> Scalar {
        if sign >= 0 {
            s.clone()
        } else {
            s.neg()
        }
    }
}

pub fn anti_triangular_signs(n: usize) -> SignTables {
    assert!(n >= 1);
    let eps = (1..=n + 1)
        .map(|k| {
            let kp = n + 1 - k;
            if (kp * kp.saturating_sub(1) / 2) % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    SignTables { n, eps }
}

/// Rebuilds the unique section matrix with the given invariant values
/// (single-matrix case):
///
/// * anti-diagonal: `s_{k,k'} = eps(k)·eps(k+1)·D_k/D_{k+1}` with
///   `D_{n+1} = 1`;
/// * below: `s_{ik} = P_ik / (eta(i,k)·D_{i+1}·D_k)` for `i' < k`.
///
/// Needs `D_2, ..., D_n` nonzero (the corner values actually divided by);
/// `D_1` may vanish.
pub fn reconstruct_section_single(
    inv: &InvariantVector,
    n: usize,
) -> Result<Matrix<Scalar>, CanonicalError> {
    let d = |k: usize| -> Result<Scalar, CanonicalError> {
        let label = GeneratorLabel::D { ell: 1, k };
        inv.get(&label)
            .cloned()
            .ok_or(CanonicalError::MissingGenerator(label))
    };
    let field = d(1)?.field();
    let one = Scalar::one(field);
    let mut corners = Vec::with_capacity(n + 1);
    for k in 1..=n {
        corners.push(d(k)?);
    }
    corners.push(one);
    for k in 2..=n {
        if corners[k - 1].is_zero() {
            return Err(CanonicalError::ZeroCorner { k });
        }
    }
    let signs = anti_triangular_signs(n);
    let mut s = Matrix::zero(n, field);
    for k in 1..=n {
        let ratio = corners[k - 1]
            .checked_div(&corners[k])
            .expect("divisor nonzero by the corner check");
        let sign = signs.eps(k) * signs.eps(k + 1);
        s.set_entry(k, index_prime(k, n), SignTables::apply(sign, &ratio));
    }
    for k in 1..=n {
        for i in 1..=n {
            if index_prime(i, n) >= k {
                continue;
            }
            let label = GeneratorLabel::P { ell: 1, i, k };
            let p = inv
                .get(&label)
                .cloned()
                .ok_or(CanonicalError::MissingGenerator(label))?;
            let divisor = corners[i].mul(&corners[k - 1]);
            let value = p
                .checked_div(&divisor)
                .expect("D_{i+1} and D_k nonzero by the corner check");
            s.set_entry(i, k, SignTables::apply(signs.eta(i, k), &value));
        }
    }
    Ok(s)
}

/// Recovers the cross-minor table `N_jk(Y)`, `j < k`, from `D_k(Y)` and
/// the pairing values `P_ik(S, Y)` against a section matrix `S` with
/// nonzero `D_2(S), ..., D_n(S)`.
///
/// For each `k` the values come out by back substitution in descending
/// `j = k-1, ..., 1`, since the `i = j'` equation reads
/// `P_ik(S,Y) = D_i(S)·N_jk(Y) + Σ_{j''>j} M_{ij''}(S)·N_{j''k}(Y)`.
pub fn recover_cross_minors(
    s: &Matrix<Scalar>,
    d_y: &[Scalar],
    p_sy: &BTreeMap<(usize, usize), Scalar>,
) -> Result<BTreeMap<(usize, usize), Scalar>, CanonicalError> {
    let n = s.n();
    if !is_section_shape(s) {
        return Err(CanonicalError::NotSectionShape);
    }
    assert_eq!(d_y.len(), n, "need D_1(Y)..D_n(Y)");
    for i in 2..=n {
        if s.corner_d(i).expect("in range").is_zero() {
            return Err(CanonicalError::ZeroCorner { k: i });
        }
    }
    let mut table: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    for k in 2..=n {
        // nu[j] for j in [1, k]; nu[k] is the known corner value.
        let mut nu: BTreeMap<usize, Scalar> = BTreeMap::new();
        nu.insert(k, d_y[k - 1].clone());
        for j in (1..k).rev() {
            let i = index_prime(j, n);
            let p = p_sy
                .get(&(i, k))
                .ok_or(CanonicalError::MissingTableEntry(i, k))?;
            let mut acc = p.clone();
            for (jj, known) in nu.range(j + 1..=k) {
                let m = s.minor_m(i, *jj).expect("i' <= j'' in range");
                acc = acc.sub(&m.mul(known));
            }
            let lead = s.minor_m(i, j).expect("j = i' is a valid pair");
            let value = acc
                .checked_div(&lead)
                .expect("leading coefficient D_i(S) nonzero");
            nu.insert(j, value);
        }
        for (j, value) in nu.range(1..k) {
            table.insert((*j, k), value.clone());
        }
    }
    Ok(table)
}

/// Searches for a unitriangular `u` with `u X_ℓ = X'_ℓ u` for all
/// components simultaneously: a linear system over the strictly upper
/// entries of `u`. Any returned element exactly conjugates `t` onto `t2`.
///
/// `None` certifies nothing for non-generic tuples; for generic tuples
/// with equal invariant vectors a conjugator exists.
pub fn find_conjugator(t: &MatrixTuple, t2: &MatrixTuple) -> Option<UnitriangularMatrix> {
    assert_eq!(t.n(), t2.n(), "same dimension required");
    assert_eq!(t.m(), t2.m(), "same tuple length required");
    assert_eq!(t.field(), t2.field(), "same field required");
    let n = t.n();
    let field = t.field();
    let zero = Scalar::zero(field);
    // Unknowns: strictly upper entries (a, b), a < b, row-major.
    let unknowns: Vec<(usize, usize)> = (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect();
    let col_of: BTreeMap<(usize, usize), usize> = unknowns
        .iter()
        .enumerate()
        .map(|(idx, &ab)| (ab, idx))
        .collect();
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    for ell in 1..=t.m() {
        let x = t.component(ell);
        let x2 = t2.component(ell);
        for r in 1..=n {
            for c in 1..=n {
                // (V X - X' V)[r,c] = X'[r,c] - X[r,c] over the unknowns V.
                let mut row = vec![zero.clone(); unknowns.len()];
                for b in r + 1..=n {
                    row[col_of[&(r, b)]] = row[col_of[&(r, b)]].add(x.entry(b, c));
                }
                for a in 1..c {
                    row[col_of[&(a, c)]] = row[col_of[&(a, c)]].sub(x2.entry(r, a));
                }
                rows.push(row);
                rhs.push(x2.entry(r, c).sub(x.entry(r, c)));
            }
        }
    }
    let sol = solve_any(rows, rhs, &zero)?;
    let mut u = UnitriangularMatrix::identity(n, field);
    for (&(a, b), value) in unknowns.iter().zip(sol) {
        u.set_above(a, b, value);
    }
    let check = adjoint_tuple(&u, t).expect("dimensions match");
    (check == *t2).then_some(u)
}
