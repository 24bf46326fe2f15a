//! Deterministic random sampling for tests and certificates.
//!
//! Certificates must replay bit-identically from (parameters, seed) on any
//! platform, so randomness comes from a self-contained SplitMix64 stream
//! (Steele, Lea, Flood: state advances by the golden-gamma constant
//! 0x9E3779B97F4A7C15, output is the murmur-style 30/27/31 mix) rather
//! than from an external RNG crate whose stream may change between
//! versions.
//!
//! Sampling conventions: over the rationals, entries are integers drawn
//! uniformly from [-10, 10], which keeps coefficient growth in long test
//! chains manageable; over a prime field, entries are uniform residues.

use crate::matrix::{Matrix, MatrixTuple};
use crate::scalar::{FieldSpec, Scalar};

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from the inclusive range `[lo, hi]`. The modulo bias
    /// is negligible for the desk-scale ranges used here.
    pub fn next_range_i64(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u64() % span) as i64
    }
}

pub fn random_scalar(field: FieldSpec, rng: &mut SplitMix64) -> Scalar {
    match field {
        FieldSpec::Rational => Scalar::from_i64(rng.next_range_i64(-10, 10), field),
        FieldSpec::Prime(p) => Scalar::from_u64(rng.next_u64() % p, field),
    }
}

pub fn random_nonzero_scalar(field: FieldSpec, rng: &mut SplitMix64) -> Scalar {
    loop {
        let s = random_scalar(field, rng);
        if !crate::ring::Ring::is_zero(&s) {
            return s;
        }
    }
}

pub fn random_matrix(n: usize, field: FieldSpec, rng: &mut SplitMix64) -> Matrix<Scalar> {
    Matrix::from_fn(n, |_, _| random_scalar(field, rng))
}

pub fn random_tuple(n: usize, m: usize, field: FieldSpec, rng: &mut SplitMix64) -> MatrixTuple {
    MatrixTuple::new((0..m).map(|_| random_matrix(n, field, rng)).collect())
        .expect("components share dimension and field")
}

/// Random tuple whose first component has all corner minors D_2..D_n
/// nonzero, resampling the first component until that holds.
pub fn random_generic_tuple(
    n: usize,
    m: usize,
    field: FieldSpec,
    rng: &mut SplitMix64,
) -> MatrixTuple {
    for _ in 0..10_000 {
        let t = random_tuple(n, m, field, rng);
        let x1 = t.component(1);
        if (2..=n).all(|k| !crate::ring::Ring::is_zero(&x1.corner_d(k).unwrap())) {
            return t;
        }
    }
    panic!("failed to sample a generic tuple; the field is too small");
}

/// Random matrix with the anti-triangular zero pattern: entries with
/// `i + j <= n` are zero, the rest random.
pub fn random_section_matrix(n: usize, field: FieldSpec, rng: &mut SplitMix64) -> Matrix<Scalar> {
    Matrix::from_fn(n, |i, j| {
        if i + j <= n {
            Scalar::zero(field)
        } else {
            random_scalar(field, rng)
        }
    })
}

/// Section-shaped matrix with nonzero anti-diagonal entries, so that all
/// corner minors are nonzero.
pub fn random_generic_section_matrix(
    n: usize,
    field: FieldSpec,
    rng: &mut SplitMix64,
) -> Matrix<Scalar> {
    Matrix::from_fn(n, |i, j| {
        if i + j <= n {
            Scalar::zero(field)
        } else if i + j == n + 1 {
            random_nonzero_scalar(field, rng)
        } else {
            random_scalar(field, rng)
        }
    })
}
