use std::fmt;

use super::{BigReal, Precision};
use crate::error::Result;

/// Complex number with [`BigReal`] components.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BigComplex {
    pub re: BigReal,
    pub im: BigReal,
}

impl BigComplex {
    pub fn new(re: BigReal, im: BigReal) -> Self {
        BigComplex { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_real(re: BigReal) -> Self {
        BigComplex {
            re,
            im: BigReal::zero(),
        }
    }

    pub fn i() -> Self {
        BigComplex::new(BigReal::zero(), BigReal::one())
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        BigComplex::new(self.re.clone(), self.im.neg())
    }

    pub fn neg(&self) -> Self {
        BigComplex::new(self.re.neg(), self.im.neg())
    }

    /// Multiplication by `i`, exact.
    pub fn mul_i(&self) -> Self {
        BigComplex::new(self.im.neg(), self.re.clone())
    }

    pub fn round(&self, p: Precision) -> Self {
        BigComplex::new(self.re.round(p), self.im.round(p))
    }

    pub fn add(&self, other: &Self, p: Precision) -> Self {
        BigComplex::new(self.re.add(&other.re, p), self.im.add(&other.im, p))
    }

    pub fn add_exact(&self, other: &Self) -> Self {
        BigComplex::new(self.re.add_exact(&other.re), self.im.add_exact(&other.im))
    }

    pub fn sub(&self, other: &Self, p: Precision) -> Self {
        BigComplex::new(self.re.sub(&other.re, p), self.im.sub(&other.im, p))
    }

    pub fn scale(&self, k: &BigReal, p: Precision) -> Self {
        BigComplex::new(self.re.mul(k, p), self.im.mul(k, p))
    }

    /// Product with each real and imaginary part rounded once: the cross
    /// terms are formed exactly before rounding.
    pub fn mul(&self, other: &Self, p: Precision) -> Self {
        let re = self
            .re
            .mul_exact(&other.re)
            .sub_exact(&self.im.mul_exact(&other.im));
        let im = self
            .re
            .mul_exact(&other.im)
            .add_exact(&self.im.mul_exact(&other.re));
        BigComplex::new(re.round(p), im.round(p))
    }

    pub fn div(&self, other: &Self, p: Precision) -> Result<Self> {
        let wp = p.with_guard(16);
        let den = other
            .re
            .mul_exact(&other.re)
            .add_exact(&other.im.mul_exact(&other.im));
        let re = self
            .re
            .mul_exact(&other.re)
            .add_exact(&self.im.mul_exact(&other.im));
        let im = self
            .im
            .mul_exact(&other.re)
            .sub_exact(&self.re.mul_exact(&other.im));
        Ok(BigComplex::new(
            re.div(&den, wp)?.round(p),
            im.div(&den, wp)?.round(p),
        ))
    }

    /// Modulus.
    pub fn abs(&self, p: Precision) -> BigReal {
        let sq = self
            .re
            .mul_exact(&self.re)
            .add_exact(&self.im.mul_exact(&self.im));
        sq.sqrt(p).expect("sum of squares is non-negative")
    }
}

impl From<BigReal> for BigComplex {
    fn from(re: BigReal) -> Self {
        BigComplex::from_real(re)
    }
}

impl fmt::Display for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re.to_f64(), self.im.to_f64())
    }
}
