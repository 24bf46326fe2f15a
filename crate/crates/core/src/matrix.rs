//! Dense square matrices over an exact ring, the minor families used by
//! the invariant polynomials, and exact linear solvers.
//!
//! Indices are 1-based at the API level, matching the usual row/column
//! conventions for minors. For a dimension-`n` matrix:
//!
//! * `i' = n + 1 - i` is the index symmetric to `i` in `[1, n]`;
//! * `minor_m(i, j)` (needs `i' <= j`) is the order-`i'` minor on rows
//!   `[i, n]` and columns `[1, i'-1] ∪ {j}`, all in increasing order;
//! * `minor_n(j, k)` (needs `j <= k`) is the order-`k'` minor on rows
//!   `{j} ∪ [k+1, n]` (row `j` first) and columns `[1, k']`;
//! * `corner_d(k)` is the lower-left corner minor on rows `[k, n]` and
//!   columns `[1, k']`, with `corner_d(n + 1) = 1` for the empty minor.

use std::fmt;

use thiserror::Error;

use crate::ring::Ring;
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix rows must form a nonempty square array")]
    NotSquare,
    #[error("matrix entries mix different fields")]
    MixedFields,
    #[error("minor precondition violated: {0}")]
    BadMinor(String),
    #[error("index {index} out of range [1, {max}]")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("tuple components must share dimension and field")]
    MismatchedComponents,
    #[error("tuple must have at least one component")]
    EmptyTuple,
}

/// The index symmetric to `i` with respect to the center of `[1, n]`.
pub fn index_prime(i: usize, n: usize) -> usize {
    assert!(i >= 1 && i <= n, "index {i} out of range [1, {n}]");
    n + 1 - i
}

/// Dense `n x n` matrix over an exact ring, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T = Scalar> {
    n: usize,
    entries: Vec<T>,
}

impl<T: Ring> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(LinalgError::NotSquare);
        }
        let entries: Vec<T> = rows.into_iter().flatten().collect();
        let witness = entries[0].clone();
        if entries.iter().any(|e| !witness.compatible(e)) {
            return Err(LinalgError::MixedFields);
        }
        Ok(Matrix { n, entries })
    }

    /// Builds from a 1-based entry function.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(n >= 1);
        let mut entries = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                entries.push(f(i, j));
            }
        }
        Matrix { n, entries }
    }

    pub fn identity_like(n: usize, witness: &T) -> Self {
        Matrix::from_fn(n, |i, j| {
            if i == j {
                witness.one_like()
            } else {
                witness.zero_like()
            }
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based entry access.
    pub fn entry(&self, i: usize, j: usize) -> &T {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn set_entry(&mut self, i: usize, j: usize, value: T) {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        self.entries[(i - 1) * self.n + (j - 1)] = value;
    }

    pub fn witness(&self) -> &T {
        &self.entries[0]
    }

    pub fn map<U: Ring>(&self, mut f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(&mut f).collect(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.n).map(|c| c.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self.entry(j, i).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch in matrix product");
        Matrix::from_fn(self.n, |i, j| {
            let mut acc = self.witness().zero_like();
            for r in 1..=self.n {
                acc = acc.add(&self.entry(i, r).mul(rhs.entry(r, j)));
            }
            acc
        })
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        Matrix::from_fn(self.n, |i, j| self.entry(i, j).add(rhs.entry(i, j)))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        Matrix::from_fn(self.n, |i, j| self.entry(i, j).sub(rhs.entry(i, j)))
    }

    /// Submatrix on the given 1-based row and column index lists, in the
    /// order given. Both lists must be nonempty and of equal length.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix<T> {
        assert!(!rows.is_empty() && rows.len() == cols.len());
        let k = rows.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in rows {
            for &j in cols {
                entries.push(self.entry(i, j).clone());
            }
        }
        Matrix { n: k, entries }
    }

    /// Exact determinant. Uses fraction-free Bareiss over the rationals,
    /// standard elimination over prime fields, and elimination with a
    /// cofactor fallback over dual numbers.
    pub fn det(&self) -> T {
        T::det_rows(self.rows())
    }

    /// Minor `M_{ij}`: order `i'`, rows `[i, n]`, columns `[1, i'-1] ∪ {j}`.
    /// Requires `i' <= j`, i.e. `(i, j)` on or below the anti-diagonal.
    pub fn minor_m(&self, i: usize, j: usize) -> Result<T, LinalgError> {
        let n = self.n;
        check_index(i, n)?;
        check_index(j, n)?;
        let ip = n + 1 - i;
        if ip > j {
            return Err(LinalgError::BadMinor(format!(
                "M_{{{i},{j}}} needs i' <= j but i' = {ip}"
            )));
        }
        let rows: Vec<usize> = (i..=n).collect();
        let cols: Vec<usize> = (1..ip).chain(std::iter::once(j)).collect();
        Ok(self.submatrix(&rows, &cols).det())
    }

    /// Minor `N_{jk}`: order `k'`, rows `{j} ∪ [k+1, n]` (row `j` first),
    /// columns `[1, k']`. Requires `j <= k`.
    pub fn minor_n(&self, j: usize, k: usize) -> Result<T, LinalgError> {
        let n = self.n;
        check_index(j, n)?;
        check_index(k, n)?;
        if j > k {
            return Err(LinalgError::BadMinor(format!(
                "N_{{{j},{k}}} needs j <= k"
            )));
        }
        let kp = n + 1 - k;
        let rows: Vec<usize> = std::iter::once(j).chain(k + 1..=n).collect();
        let cols: Vec<usize> = (1..=kp).collect();
        Ok(self.submatrix(&rows, &cols).det())
    }

    /// Lower-left corner minor `D_k`: rows `[k, n]`, columns `[1, k']`.
    /// `k = n + 1` is the empty minor, which is 1.
    pub fn corner_d(&self, k: usize) -> Result<T, LinalgError> {
        let n = self.n;
        if k < 1 || k > n + 1 {
            return Err(LinalgError::IndexOutOfRange { index: k, max: n + 1 });
        }
        if k == n + 1 {
            return Ok(self.witness().one_like());
        }
        let rows: Vec<usize> = (k..=n).collect();
        let cols: Vec<usize> = (1..=n + 1 - k).collect();
        Ok(self.submatrix(&rows, &cols).det())
    }
}

impl Matrix<Scalar> {
    pub fn zero(n: usize, field: FieldSpec) -> Self {
        Matrix::from_fn(n, |_, _| Scalar::zero(field))
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        Matrix::identity_like(n, &Scalar::zero(field))
    }

    pub fn from_i64_rows(rows: &[&[i64]], field: FieldSpec) -> Self {
        let n = rows.len();
        assert!(n >= 1 && rows.iter().all(|r| r.len() == n));
        Matrix::from_fn(n, |i, j| Scalar::from_i64(rows[i - 1][j - 1], field))
    }

    pub fn field(&self) -> FieldSpec {
        self.witness().field()
    }

    /// Entrywise reduction mod `p`; `None` when some denominator
    /// vanishes mod `p`.
    pub fn reduce_mod(&self, p: u64) -> Option<Matrix<Scalar>> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(e.reduce_mod(p)?);
        }
        Some(Matrix { n: self.n, entries })
    }
}

impl fmt::Display for Matrix<Scalar> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 1..=self.n {
            for j in 1..=self.n {
                if j > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            if i < self.n {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

/// A point of the tuple space: `m` matrices of common dimension and field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixTuple {
    components: Vec<Matrix<Scalar>>,
}

impl MatrixTuple {
    pub fn new(components: Vec<Matrix<Scalar>>) -> Result<Self, LinalgError> {
        let first = components.first().ok_or(LinalgError::EmptyTuple)?;
        let (n, field) = (first.n(), first.field());
        if components.iter().any(|c| c.n() != n || c.field() != field) {
            return Err(LinalgError::MismatchedComponents);
        }
        Ok(MatrixTuple { components })
    }

    pub fn n(&self) -> usize {
        self.components[0].n()
    }

    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn field(&self) -> FieldSpec {
        self.components[0].field()
    }

    /// 1-based component access.
    pub fn component(&self, ell: usize) -> &Matrix<Scalar> {
        assert!(ell >= 1 && ell <= self.m());
        &self.components[ell - 1]
    }

    pub fn components(&self) -> &[Matrix<Scalar>] {
        &self.components
    }

    pub fn reduce_mod(&self, p: u64) -> Option<MatrixTuple> {
        let mut components = Vec::with_capacity(self.components.len());
        for c in &self.components {
            components.push(c.reduce_mod(p)?);
        }
        Some(MatrixTuple { components })
    }
}

fn check_index(i: usize, n: usize) -> Result<(), LinalgError> {
    if i >= 1 && i <= n {
        Ok(())
    } else {
        Err(LinalgError::IndexOutOfRange { index: i, max: n })
    }
}

/// Rank of a rectangular row list over a field, by elimination.
pub(crate) fn rank_rows(mut rows: Vec<Vec<Scalar>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let width = rows[0].len();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].inv().expect("nonzero field element");
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].mul(&inv);
            for c in col..width {
                let t = factor.mul(&rows[rank][c]);
                rows[r][c] = rows[r][c].sub(&t);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Solves a square system `A x = b` with a unique solution; `None` when
/// `A` is singular.
pub(crate) fn solve_square(a: Vec<Vec<Scalar>>, b: Vec<Scalar>) -> Option<Vec<Scalar>> {
    let n = a.len();
    debug_assert!(a.iter().all(|r| r.len() == n) && b.len() == n);
    let mut aug: Vec<Vec<Scalar>> = a
        .into_iter()
        .zip(b)
        .map(|(mut row, rhs)| {
            row.push(rhs);
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(p, col);
        let inv = aug[col][col].inv().expect("nonzero field element");
        for c in col..=n {
            aug[col][c] = aug[col][c].mul(&inv);
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..=n {
                let t = factor.mul(&aug[col][c]);
                aug[r][c] = aug[r][c].sub(&t);
            }
        }
    }
    Some(aug.into_iter().map(|row| row[row.len() - 1].clone()).collect())
}

/// Particular solution of a rectangular system `A x = b` (free variables
/// set to zero), or `None` when the system is inconsistent. `witness`
/// supplies the field for degenerate shapes.
pub(crate) fn solve_any(
    a: Vec<Vec<Scalar>>,
    b: Vec<Scalar>,
    witness: &Scalar,
) -> Option<Vec<Scalar>> {
    let height = a.len();
    let width = a.first().map_or(0, |r| r.len());
    debug_assert!(b.len() == height);
    let mut aug: Vec<Vec<Scalar>> = a
        .into_iter()
        .zip(b.iter())
        .map(|(mut row, rhs)| {
            row.push(rhs.clone());
            row
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..height).find(|&r| !aug[r][col].is_zero()) else {
            continue;
        };
        aug.swap(rank, p);
        let inv = aug[rank][col].inv().expect("nonzero field element");
        for c in col..=width {
            aug[rank][c] = aug[rank][c].mul(&inv);
        }
        for r in 0..height {
            if r == rank || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..=width {
                let t = factor.mul(&aug[rank][c]);
                aug[r][c] = aug[r][c].sub(&t);
            }
        }
        pivots.push((rank, col));
        rank += 1;
        if rank == height {
            break;
        }
    }
    // Inconsistent when a zero row has nonzero right-hand side.
    for r in rank..height {
        if !aug[r][width].is_zero() {
            return None;
        }
    }
    let mut x = vec![witness.zero_like(); width];
    for (r, c) in pivots {
        x[c] = aug[r][width].clone();
    }
    Some(x)
}
