//! Exact field scalars: arbitrary-precision rationals and prime-field
//! residues behind one [`Scalar`] type.
//!
//! Rationals are kept in lowest terms with a positive denominator and
//! residues in `[0, p)`, so structural equality is mathematical equality.
//! There is no floating point anywhere.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::ring::{det_by_elimination, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("malformed scalar literal `{0}`")]
    Malformed(String),
    #[error("zero denominator in scalar literal `{0}`")]
    ZeroDenominator(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a valid modulus (need a prime p >= 5)")]
    InvalidModulus(u64),
}

/// The exact field a computation runs over: the rationals, or integers
/// modulo a prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    /// Residues modulo the contained prime. Always construct through
    /// [`FieldSpec::prime`], which validates primality and rejects
    /// moduli below 5 (characteristic 2 and 3 are not supported by the
    /// default configuration).
    Prime(u64),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self, ScalarError> {
        if p >= 5 && is_prime_u64(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(ScalarError::InvalidModulus(p))
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact element of the field named by a [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rational(BigRational::zero()),
            FieldSpec::Prime(p) => Scalar::Residue { value: 0, modulus: p },
        }
    }

    pub fn one(field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rational(BigRational::one()),
            FieldSpec::Prime(p) => Scalar::Residue { value: 1 % p, modulus: p },
        }
    }

    pub fn from_i64(v: i64, field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => {
                let r = (v % p as i64 + p as i64) as u64 % p;
                Scalar::Residue { value: r, modulus: p }
            }
        }
    }

    pub fn from_u64(v: u64, field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime(p) => Scalar::Residue { value: v % p, modulus: p },
        }
    }

    pub fn from_bigint(v: &BigInt, field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => Scalar::Residue { value: bigint_mod_u64(v, p), modulus: p },
        }
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Residue { .. } => None,
        }
    }

    /// Parses the textual scalar format: optional sign, decimal digits,
    /// and an optional `/` followed by decimal digits. Rational results
    /// are reduced; prime-field results are residues of numerator times
    /// inverse denominator.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Self, ScalarError> {
        let trimmed = text.trim();
        let malformed = || ScalarError::Malformed(text.to_string());
        let (num_text, den_text) = match trimmed.split_once('/') {
            Some((a, b)) => (a, Some(b)),
            None => (trimmed, None),
        };
        let numer: BigInt = num_text.parse().map_err(|_| malformed())?;
        let denom: BigInt = match den_text {
            Some(d) => {
                let d: BigInt = d.parse().map_err(|_| malformed())?;
                if d.is_negative() {
                    // The format puts the sign on the numerator.
                    return Err(malformed());
                }
                d
            }
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(ScalarError::ZeroDenominator(text.to_string()));
        }
        match field {
            FieldSpec::Rational => Ok(Scalar::Rational(BigRational::new(numer, denom))),
            FieldSpec::Prime(p) => {
                let n = bigint_mod_u64(&numer, p);
                let d = bigint_mod_u64(&denom, p);
                let d_inv = invmod(d, p).ok_or(ScalarError::DivisionByZero)?;
                Ok(Scalar::Residue { value: mulmod(n, d_inv, p), modulus: p })
            }
        }
    }

    pub fn checked_inv(&self) -> Result<Self, ScalarError> {
        self.inv().ok_or(ScalarError::DivisionByZero)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul(&rhs.checked_inv()?))
    }

    /// Reduces a rational scalar modulo `p`, returning `None` when the
    /// denominator vanishes mod `p`. Residues are returned unchanged when
    /// the modulus matches and `None` otherwise.
    pub fn reduce_mod(&self, p: u64) -> Option<Self> {
        match self {
            Scalar::Rational(r) => {
                let n = bigint_mod_u64(r.numer(), p);
                let d = bigint_mod_u64(r.denom(), p);
                let d_inv = invmod(d, p)?;
                Some(Scalar::Residue { value: mulmod(n, d_inv, p), modulus: p })
            }
            Scalar::Residue { modulus, .. } => (*modulus == p).then(|| self.clone()),
        }
    }

    fn residue_pair<'a>(&'a self, rhs: &'a Scalar) -> (u64, u64, u64) {
        match (self, rhs) {
            (
                Scalar::Residue { value: a, modulus: p },
                Scalar::Residue { value: b, modulus: q },
            ) => {
                assert_eq!(p, q, "mixed-field operands: F{p} vs F{q}");
                (*a, *b, *p)
            }
            _ => unreachable!(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Ring for Scalar {
    fn zero_like(&self) -> Self {
        Scalar::zero(self.field())
    }

    fn one_like(&self) -> Self {
        Scalar::one(self.field())
    }

    fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    fn add(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { .. }, Scalar::Residue { .. }) => {
                let (a, b, p) = self.residue_pair(rhs);
                Scalar::Residue { value: addmod(a, b, p), modulus: p }
            }
            _ => panic!("mixed-field operands: {} vs {}", self.field(), rhs.field()),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { .. }, Scalar::Residue { .. }) => {
                let (a, b, p) = self.residue_pair(rhs);
                Scalar::Residue { value: addmod(a, p - b, p), modulus: p }
            }
            _ => panic!("mixed-field operands: {} vs {}", self.field(), rhs.field()),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { .. }, Scalar::Residue { .. }) => {
                let (a, b, p) = self.residue_pair(rhs);
                Scalar::Residue { value: mulmod(a, b, p), modulus: p }
            }
            _ => panic!("mixed-field operands: {} vs {}", self.field(), rhs.field()),
        }
    }

    fn neg(&self) -> Self {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }

    fn inv(&self) -> Option<Self> {
        match self {
            Scalar::Rational(a) => (!a.is_zero()).then(|| Scalar::Rational(a.recip())),
            Scalar::Residue { value, modulus } => invmod(*value, *modulus)
                .map(|v| Scalar::Residue { value: v, modulus: *modulus }),
        }
    }

    fn compatible(&self, other: &Self) -> bool {
        self.field() == other.field()
    }

    /// Fraction-free Bareiss over the rationals (clears denominators and
    /// eliminates over the integers, which controls intermediate growth);
    /// standard elimination over prime fields.
    fn det_rows(rows: Vec<Vec<Scalar>>) -> Scalar {
        match rows[0][0] {
            Scalar::Rational(_) => det_rational_bareiss(rows),
            Scalar::Residue { .. } => det_by_elimination(rows),
        }
    }
}

fn det_rational_bareiss(rows: Vec<Vec<Scalar>>) -> Scalar {
    let mut scale = BigInt::one();
    let int_rows: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let rats: Vec<&BigRational> = row
                .iter()
                .map(|s| s.as_rational().expect("rational determinant on rational entries"))
                .collect();
            let lcm = rats
                .iter()
                .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            scale *= &lcm;
            rats.iter()
                .map(|r| r.numer() * (&lcm / r.denom()))
                .collect()
        })
        .collect();
    Scalar::Rational(BigRational::new(bareiss_int(int_rows), scale))
}

/// Bareiss fraction-free elimination over the integers. Every interior
/// division is exact by the Sylvester determinant identity.
fn bareiss_int(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

fn addmod(a: u64, b: u64, p: u64) -> u64 {
    debug_assert!(a < p && b <= p);
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    Some(powmod(a, p - 2, p))
}

fn bigint_mod_u64(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

/// Deterministic Miller-Rabin for 64-bit integers. The fixed base set is
/// sufficient for all inputs below 3.3e24.
pub(crate) fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(text: &str) -> Scalar {
        Scalar::parse(text, FieldSpec::Rational).unwrap()
    }

    #[test]
    fn parses_fraction_and_reduces() {
        assert_eq!(q("2/3").to_string(), "2/3");
        assert_eq!(q("-4/6").to_string(), "-2/3");
        assert_eq!(q("+7"), Scalar::from_i64(7, FieldSpec::Rational));
    }

    #[test]
    fn parses_mod_p() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(Scalar::parse("10", f7).unwrap(), Scalar::from_i64(3, f7));
        assert_eq!(Scalar::parse("-1", f7).unwrap(), Scalar::from_i64(6, f7));
        // 2/3 = 2 * 3^{-1} = 2 * 5 = 10 = 3 mod 7
        assert_eq!(Scalar::parse("2/3", f7).unwrap(), Scalar::from_i64(3, f7));
    }

    #[test]
    fn parse_rejects_garbage() {
        for bad in ["", "a", "1/2/3", "1.5", "2/-3", "--1", "1/ 2"] {
            assert!(
                Scalar::parse(bad, FieldSpec::Rational).is_err(),
                "accepted {bad:?}"
            );
        }
        assert_eq!(
            Scalar::parse("1/0", FieldSpec::Rational),
            Err(ScalarError::ZeroDenominator("1/0".into()))
        );
    }

    #[test]
    fn field_ops_match_hand_values() {
        assert_eq!(q("1/2").add(&q("1/3")), q("5/6"));
        let f7 = FieldSpec::prime(7).unwrap();
        let three = Scalar::from_i64(3, f7);
        assert_eq!(three.inv().unwrap(), Scalar::from_i64(5, f7));
        assert_eq!(
            Scalar::zero(f7).checked_inv(),
            Err(ScalarError::DivisionByZero)
        );
        assert_eq!(
            q("1").checked_div(&q("0")),
            Err(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn modulus_validation() {
        assert!(FieldSpec::prime(2147483647).is_ok());
        assert!(FieldSpec::prime(7).is_ok());
        for bad in [0, 1, 2, 3, 4, 6, 9, 2147483646] {
            assert_eq!(FieldSpec::prime(bad), Err(ScalarError::InvalidModulus(bad)));
        }
    }

    #[test]
    fn reduce_mod_commutes_on_integers() {
        let p = 101;
        let a = q("-35/4");
        let red = a.reduce_mod(p).unwrap();
        // -35/4 mod 101: 4^{-1} = 76, -35 = 66, 66*76 mod 101 = 67
        assert_eq!(red, Scalar::from_i64(67, FieldSpec::prime(p).unwrap()));
        assert_eq!(q("1/101").reduce_mod(101), None);
    }

    #[test]
    #[should_panic(expected = "mixed-field operands")]
    fn mixed_field_panics() {
        let f7 = FieldSpec::prime(7).unwrap();
        let _ = q("1").add(&Scalar::one(f7));
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in -40i64..40, b in -40i64..40, c in -40i64..40,
                                 da in 1i64..9, db in 1i64..9, dc in 1i64..9) {
            let x = q(&format!("{a}/{da}"));
            let y = q(&format!("{b}/{db}"));
            let z = q(&format!("{c}/{dc}"));
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert_eq!(x.add(&x.neg()), Scalar::zero(FieldSpec::Rational));
            if !x.is_zero() {
                prop_assert_eq!(x.mul(&x.inv().unwrap()), Scalar::one(FieldSpec::Rational));
            }
        }

        #[test]
        fn prime_field_axioms(a in 0u64..101, b in 0u64..101, c in 0u64..101) {
            let f = FieldSpec::prime(101).unwrap();
            let x = Scalar::from_i64(a as i64, f);
            let y = Scalar::from_i64(b as i64, f);
            let z = Scalar::from_i64(c as i64, f);
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert_eq!(x.sub(&y), x.add(&y.neg()));
            if !x.is_zero() {
                prop_assert_eq!(x.mul(&x.inv().unwrap()), Scalar::one(f));
            }
        }

        #[test]
        fn text_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
            let x = q(&format!("{n}/{d}"));
            prop_assert_eq!(Scalar::parse(&x.to_string(), FieldSpec::Rational).unwrap(), x);
        }
    }
}
