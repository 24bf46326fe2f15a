//! Test-only symbolic machinery: sparse multivariate polynomials over the
//! integers with a brute-force cofactor determinant. Used to validate the
//! sign tables as polynomial identities, independently of every
//! determinant and minor routine in the library.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

/// Sparse multivariate polynomial: exponent vector -> coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, BigInt>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = MPoly::zero(nvars);
        if c != 0 {
            p.terms.insert(vec![0; nvars], BigInt::from(c));
        }
        p
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0u16; nvars];
        exps[index] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(exps, BigInt::from(1));
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(e.clone()).or_insert_with(BigInt::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(e);
            }
        }
        MPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn neg(&self) -> Self {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.nvars, rhs.nvars);
        let mut terms: BTreeMap<Vec<u16>, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = terms.entry(exps.clone()).or_insert_with(BigInt::zero);
                *entry += ca * cb;
                if entry.is_zero() {
                    terms.remove(&exps);
                }
            }
        }
        MPoly {
            nvars: self.nvars,
            terms,
        }
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, coeff)| (e.clone(), coeff * BigInt::from(c)))
                .collect(),
        }
    }
}

/// First-row cofactor determinant of a square matrix of polynomials.
pub fn det(m: &[Vec<MPoly>]) -> MPoly {
    let n = m.len();
    assert!(n > 0 && m.iter().all(|r| r.len() == n));
    if n == 1 {
        return m[0][0].clone();
    }
    let nvars = m[0][0].nvars;
    let mut acc = MPoly::zero(nvars);
    for (j, entry) in m[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = entry.mul(&det(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

/// Symbolic section-pattern matrix of size `n`: zero above the
/// anti-diagonal, a fresh variable at each position on or below it.
/// Returns the matrix and the variable index of each free position.
pub fn symbolic_section(n: usize) -> (Vec<Vec<MPoly>>, BTreeMap<(usize, usize), usize>) {
    let mut var_of = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            if i + j > n {
                let next = var_of.len();
                var_of.insert((i, j), next);
            }
        }
    }
    let nvars = var_of.len();
    let matrix = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| match var_of.get(&(i, j)) {
                    Some(&v) => MPoly::var(nvars, v),
                    None => MPoly::zero(nvars),
                })
                .collect()
        })
        .collect();
    (matrix, var_of)
}

/// Submatrix selection on 1-based index lists, kept in the given order.
pub fn select(m: &[Vec<MPoly>], rows: &[usize], cols: &[usize]) -> Vec<Vec<MPoly>> {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| m[i - 1][j - 1].clone()).collect())
        .collect()
}
