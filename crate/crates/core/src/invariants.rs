//! The invariant polynomials `P_ik` and the free generating family for
//! tuples.
//!
//! For a dimension-`n` matrix pair, `P_ik(X, Y) = Σ_{j=i'..k} M_ij(X) N_jk(Y)`
//! over pairs strictly below the anti-diagonal (`i' < k`), and
//! `P_ik(X) = P_ik(X, X)`. For an `m`-tuple, the generating family consists
//! of the corner minors `D_k` of every component, the single-matrix `P_ik`
//! of every component, and the cross invariants pairing the first component
//! with each later one; its size is `m·n² − n(n−1)/2`.

use std::fmt;

use crate::matrix::{index_prime, LinalgError, Matrix, MatrixTuple};
use crate::ring::Ring;
use crate::scalar::Scalar;

/// Typed name of one generator.
///
/// `ell` is the 1-based component index. Family `Pcross` always pairs the
/// first component with component `ell >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GeneratorLabel {
    D { ell: usize, k: usize },
    P { ell: usize, i: usize, k: usize },
    Pcross { ell: usize, i: usize, k: usize },
}

impl fmt::Display for GeneratorLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorLabel::D { ell, k } => write!(f, "D[{ell},{k}]"),
            GeneratorLabel::P { ell, i, k } => write!(f, "P[{ell},({i},{k})]"),
            GeneratorLabel::Pcross { ell, i, k } => write!(f, "PX[1,{ell},({i},{k})]"),
        }
    }
}

/// Index pairs `(i, k)` with `i' < k` (strictly below the anti-diagonal),
/// in the order: ascending `k`, then descending `i`.
pub fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for k in 1..=n {
        for i in (1..=n).rev() {
            if index_prime(i, n) < k {
                pairs.push((i, k));
            }
        }
    }
    pairs
}

/// All generator labels in the canonical order: family D, then P, then
/// Pcross; within a family ascending `ell`; within a component, D by
/// ascending `k` and P/Pcross over [`ordered_pairs`].
pub fn enumerate_generators(n: usize, m: usize) -> Vec<GeneratorLabel> {
    assert!(n >= 1 && m >= 1);
    let pairs = ordered_pairs(n);
    let mut labels = Vec::new();
    for ell in 1..=m {
        for k in 1..=n {
            labels.push(GeneratorLabel::D { ell, k });
        }
    }
    for ell in 1..=m {
        for &(i, k) in &pairs {
            labels.push(GeneratorLabel::P { ell, i, k });
        }
    }
    for ell in 2..=m {
        for &(i, k) in &pairs {
            labels.push(GeneratorLabel::Pcross { ell, i, k });
        }
    }
    labels
}

/// `P_ik(X, Y) = Σ_{j=i'..k} M_ij(X) N_jk(Y)`; requires `i' < k`.
pub fn p_pair<T: Ring>(
    x: &Matrix<T>,
    y: &Matrix<T>,
    i: usize,
    k: usize,
) -> Result<T, LinalgError> {
    let n = x.n();
    assert_eq!(n, y.n(), "dimension mismatch");
    let ip = index_prime(i, n);
    if ip >= k {
        return Err(LinalgError::BadMinor(format!(
            "P_{{{i},{k}}} needs i' < k but i' = {ip}"
        )));
    }
    let mut acc = x.witness().zero_like();
    for j in ip..=k {
        let m = x.minor_m(i, j).expect("i' <= j by the summation range");
        let nx = y.minor_n(j, k).expect("j <= k by the summation range");
        acc = acc.add(&m.mul(&nx));
    }
    Ok(acc)
}

/// `P_ik(X) = P_ik(X, X)`; requires `i' < k`.
pub fn p_single<T: Ring>(x: &Matrix<T>, i: usize, k: usize) -> Result<T, LinalgError> {
    p_pair(x, x, i, k)
}

/// Evaluates one generator on a component slice (generic over the ring,
/// so the same code path serves both plain evaluation and dual-number
/// differentiation).
pub fn evaluate_generator<T: Ring>(label: &GeneratorLabel, components: &[Matrix<T>]) -> T {
    match *label {
        GeneratorLabel::D { ell, k } => components[ell - 1]
            .corner_d(k)
            .expect("valid corner index"),
        GeneratorLabel::P { ell, i, k } => {
            p_single(&components[ell - 1], i, k).expect("valid generator pair")
        }
        GeneratorLabel::Pcross { ell, i, k } => {
            p_pair(&components[0], &components[ell - 1], i, k).expect("valid generator pair")
        }
    }
}

/// The ordered value vector of the full generating family at one tuple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantVector {
    labels: Vec<GeneratorLabel>,
    values: Vec<Scalar>,
}

impl InvariantVector {
    pub fn labels(&self) -> &[GeneratorLabel] {
        &self.labels
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn get(&self, label: &GeneratorLabel) -> Option<&Scalar> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|idx| &self.values[idx])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GeneratorLabel, &Scalar)> {
        self.labels.iter().zip(self.values.iter())
    }

    /// First label where the two vectors disagree, if any.
    pub fn first_difference(&self, other: &InvariantVector) -> Option<GeneratorLabel> {
        debug_assert_eq!(self.labels, other.labels);
        self.iter()
            .zip(other.values.iter())
            .find(|((_, a), b)| a != b)
            .map(|((l, _), _)| *l)
    }
}

/// Evaluates every generator of the family at the tuple, in canonical
/// order.
pub fn evaluate_invariants(t: &MatrixTuple) -> InvariantVector {
    let labels = enumerate_generators(t.n(), t.m());
    let values = labels
        .iter()
        .map(|l| evaluate_generator(l, t.components()))
        .collect();
    InvariantVector { labels, values }
}
