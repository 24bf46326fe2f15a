//! Ring abstraction shared by exact field scalars and their dual-number
//! extension, plus determinant routines that assume nothing beyond exact
//! ring arithmetic.

use std::fmt::Debug;

/// An exact commutative ring element. Every operation is exact: no
/// rounding, no overflow, and `==` is mathematical equality.
///
/// Elements carry their ring with them (field kind, modulus), so fresh
/// zeros and ones are derived from an existing witness value. Operations
/// on elements of different rings panic; user-facing input paths validate
/// field consistency before any arithmetic runs.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplicative inverse, if this element is invertible.
    fn inv(&self) -> Option<Self>;

    /// True when the two elements live in the same ring.
    fn compatible(&self, other: &Self) -> bool;

    /// Determinant of a square row-major matrix of ring elements.
    ///
    /// The default eliminates with division, pivoting on invertible
    /// entries only, and falls back to cofactor expansion when a column
    /// offers no invertible pivot (possible over a ring with zero
    /// divisors, e.g. dual numbers). Implementors may override with a
    /// representation-specific algorithm.
    fn det_rows(rows: Vec<Vec<Self>>) -> Self
    where
        Self: Sized,
    {
        det_by_elimination(rows)
    }
}

/// Gaussian elimination determinant over any [`Ring`], pivoting on
/// invertible entries. When some column below the current row has only
/// non-invertible entries, the remaining block is expanded by cofactors;
/// over a field that situation only arises with an all-zero column, which
/// short-circuits to zero.
pub(crate) fn det_by_elimination<T: Ring>(mut a: Vec<Vec<T>>) -> T {
    let n = a.len();
    assert!(n > 0, "determinant of an empty matrix needs a witness");
    debug_assert!(a.iter().all(|r| r.len() == n));
    let mut det = a[0][0].one_like();
    let mut negate = false;
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| a[r][col].inv().is_some());
        let Some(p) = pivot_row else {
            if (col..n).all(|r| a[r][col].is_zero()) {
                return det.zero_like();
            }
            let block: Vec<Vec<T>> = a[col..].iter().map(|r| r[col..].to_vec()).collect();
            let d = det.mul(&det_by_cofactor(&block));
            return if negate { d.neg() } else { d };
        };
        if p != col {
            a.swap(p, col);
            negate = !negate;
        }
        let pivot = a[col][col].clone();
        let pivot_inv = pivot.inv().expect("pivot chosen invertible");
        det = det.mul(&pivot);
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].mul(&pivot_inv);
            for c in col..n {
                let t = factor.mul(&a[col][c]);
                a[r][c] = a[r][c].sub(&t);
            }
        }
    }
    if negate {
        det.neg()
    } else {
        det
    }
}

/// First-row cofactor expansion. Exponential, so only used for small
/// blocks and as the stall fallback of [`det_by_elimination`].
pub(crate) fn det_by_cofactor<T: Ring>(a: &[Vec<T>]) -> T {
    let n = a.len();
    assert!(n > 0);
    if n == 1 {
        return a[0][0].clone();
    }
    let mut acc = a[0][0].zero_like();
    for (j, entry) in a[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<T>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = entry.mul(&det_by_cofactor(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}
