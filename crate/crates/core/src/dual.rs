//! Dual numbers `a + b·ε` with `ε² = 0` over exact scalars.
//!
//! Lifting one coordinate of a tuple with seed direction 1 (all others 0)
//! turns any polynomial evaluation into an exact (value, partial
//! derivative) pair. This is the derivative engine behind the Jacobian
//! rank certificates; no symbolic differentiation is involved.

use crate::ring::Ring;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualScalar {
    std: Scalar,
    inf: Scalar,
}

impl DualScalar {
    /// `std + inf·ε`. Both parts must live in the same field.
    pub fn lift(std: Scalar, inf: Scalar) -> Self {
        assert!(
            std.compatible(&inf),
            "dual parts over different fields: {} vs {}",
            std.field(),
            inf.field()
        );
        DualScalar { std, inf }
    }

    /// Embeds a plain scalar with zero ε-part.
    pub fn constant(std: Scalar) -> Self {
        let inf = std.zero_like();
        DualScalar { std, inf }
    }

    pub fn std(&self) -> &Scalar {
        &self.std
    }

    pub fn inf(&self) -> &Scalar {
        &self.inf
    }
}

impl Ring for DualScalar {
    fn zero_like(&self) -> Self {
        DualScalar {
            std: self.std.zero_like(),
            inf: self.std.zero_like(),
        }
    }

    fn one_like(&self) -> Self {
        DualScalar {
            std: self.std.one_like(),
            inf: self.std.zero_like(),
        }
    }

    fn is_zero(&self) -> bool {
        self.std.is_zero() && self.inf.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        DualScalar {
            std: self.std.add(&rhs.std),
            inf: self.inf.add(&rhs.inf),
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        DualScalar {
            std: self.std.sub(&rhs.std),
            inf: self.inf.sub(&rhs.inf),
        }
    }

    fn mul(&self, rhs: &Self) -> Self {
        // (a + bε)(c + dε) = ac + (ad + bc)ε
        DualScalar {
            std: self.std.mul(&rhs.std),
            inf: self.std.mul(&rhs.inf).add(&self.inf.mul(&rhs.std)),
        }
    }

    fn neg(&self) -> Self {
        DualScalar {
            std: self.std.neg(),
            inf: self.inf.neg(),
        }
    }

    /// `a + bε` is invertible iff `a` is; the inverse is `a⁻¹ − a⁻²b·ε`.
    fn inv(&self) -> Option<Self> {
        let std_inv = self.std.inv()?;
        let inf = std_inv.mul(&std_inv).mul(&self.inf).neg();
        Some(DualScalar { std: std_inv, inf })
    }

    fn compatible(&self, other: &Self) -> bool {
        self.std.compatible(&other.std)
    }
}
