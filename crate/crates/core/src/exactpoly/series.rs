use std::fmt;

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Truncated power series `c_0 + c_1 w + ... + c_order w^order` over the
/// rationals. Coefficients beyond `order` are unknown, not zero, so every
/// binary operation truncates to the shorter operand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<Rational>,
}

impl RationalSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series carries at least one coefficient"
        );
        RationalSeries { coeffs }
    }

    pub fn zeros(order: usize) -> Self {
        RationalSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    /// `c * w^power`, known to `order`.
    pub fn monomial(c: Rational, power: usize, order: usize) -> Self {
        let mut s = Self::zeros(order);
        if power <= order {
            s.coeffs[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = (order + 1).min(self.coeffs.len());
        RationalSeries {
            coeffs: self.coeffs[..n].to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        RationalSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        RationalSeries {
            coeffs: (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RationalSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                (0..=k)
                    .filter(|&i| !self.coeffs[i].is_zero())
                    .fold(Rational::zero(), |acc, i| {
                        acc + &self.coeffs[i] * &other.coeffs[k - i]
                    })
            })
            .collect();
        RationalSeries { coeffs }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn recip(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::domain(
                "series reciprocal needs a nonzero constant term",
            ));
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..self.coeffs.len() {
            let s = (1..=k).fold(Rational::zero(), |acc, i| {
                acc + &self.coeffs[i] * &out[k - i]
            });
            out.push(-s * &inv0);
        }
        Ok(RationalSeries { coeffs: out })
    }

    /// Formal derivative; the result is known to one order less.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zeros(0);
        }
        RationalSeries {
            coeffs: (1..self.coeffs.len())
                .map(|i| &self.coeffs[i] * Rational::from_integer(i.into()))
                .collect(),
        }
    }

    /// Antiderivative with zero constant; known to one order more.
    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / Rational::from_integer((i + 1).into())),
        );
        RationalSeries { coeffs }
    }

    /// `ln f` for `f(0) = 1`, as `∫ f'/f`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::domain("series logarithm needs constant term 1"));
        }
        if self.order() == 0 {
            return Ok(Self::zeros(0));
        }
        let quotient = self
            .derivative()
            .mul(&self.truncate(self.order() - 1).recip()?);
        Ok(quotient.integral())
    }

    /// `f / w^k`; the dropped leading coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if k > self.order() {
            return Err(Error::domain("shift exceeds series order"));
        }
        if self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return Err(Error::domain(
                "series is not divisible by the requested power of w",
            ));
        }
        Ok(RationalSeries {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }
}

impl fmt::Display for RationalSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}] + O(w^{})", parts.join(", "), self.coeffs.len())
    }
}
