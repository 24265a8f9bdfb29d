use std::fmt;

use num_traits::{One, Zero};

use super::{Rational, RationalSeries};
use crate::bigfloat::{BigReal, Precision};
use crate::error::{Error, Result};

/// Polynomial in `γ` with exact rational coefficients, lowest power first.
/// Trailing zero coefficients are trimmed, so the zero polynomial has no
/// coefficients at all.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GammaPoly {
    coeffs: Vec<Rational>,
}

impl GammaPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        GammaPoly { coeffs }
    }

    pub fn zero() -> Self {
        GammaPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `γ`.
    pub fn gamma() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Exact value at a rational point.
    pub fn eval_exact(&self, gamma: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * gamma + c)
    }

    /// Horner evaluation with each coefficient rounded at working precision
    /// and a single final rounding to `p`.
    pub fn eval(&self, gamma: &BigReal, p: Precision) -> BigReal {
        let wp = p.with_guard(16 + 2 * self.coeffs.len() as u32);
        let mut acc = BigReal::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(gamma, wp).add(&BigReal::from_ratio(c, wp), wp);
        }
        acc.round(p)
    }

    /// Coefficients as `p/q` strings, ascending powers of `γ`.
    pub fn to_rational_strings(&self) -> Vec<String> {
        if self.coeffs.is_empty() {
            return vec!["0".to_owned()];
        }
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

impl fmt::Display for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_rational_strings().join(" "))
    }
}

/// Power series in `w` whose coefficients are polynomials in `γ`, with an
/// optional simple pole part `residue / w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaPolySeries {
    residue: Rational,
    coeffs: Vec<GammaPoly>,
}

impl GammaPolySeries {
    pub fn new(residue: Rational, coeffs: Vec<GammaPoly>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a series carries at least one coefficient"
        );
        GammaPolySeries { residue, coeffs }
    }

    /// `(a + b γ) * s(w)` for a rational series `s`.
    pub fn linear_times(a: &Rational, b: &Rational, s: &RationalSeries) -> Self {
        let lin = GammaPoly::new(vec![a.clone(), b.clone()]);
        Self::new(
            Rational::zero(),
            s.coeffs().iter().map(|c| lin.scale(c)).collect(),
        )
    }

    pub fn residue(&self) -> &Rational {
        &self.residue
    }

    pub fn coeffs(&self) -> &[GammaPoly] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `exp(f)` for `f(0) = 0` and no pole part, via `n E_n = Σ k f_k E_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.residue.is_zero() || !self.coeffs[0].is_zero() {
            return Err(Error::domain(
                "series exponential needs a vanishing constant term",
            ));
        }
        let mut out: Vec<GammaPoly> = vec![GammaPoly::constant(Rational::one())];
        for n in 1..self.coeffs.len() {
            let mut acc = GammaPoly::zero();
            for k in 1..=n {
                let kf = Rational::from_integer(k.into());
                acc = acc.add(&self.coeffs[k].scale(&kf).mul(&out[n - k]));
            }
            out.push(acc.scale(&Rational::new(1.into(), n.into())));
        }
        Ok(Self::new(Rational::zero(), out))
    }

    /// Product with a rational series (no pole part on either side).
    pub fn mul_series(&self, s: &RationalSeries) -> Self {
        let n = self.coeffs.len().min(s.coeffs().len());
        let coeffs = (0..n)
            .map(|k| {
                (0..=k).fold(GammaPoly::zero(), |acc, i| {
                    acc.add(&self.coeffs[i].scale(s.coeff(k - i)))
                })
            })
            .collect();
        Self::new(self.residue.clone() * s.coeff(0), coeffs)
    }

    /// `f / w`: the constant coefficient (which must be a pure number)
    /// becomes the residue of the pole part.
    pub fn divide_by_w(&self) -> Result<Self> {
        if !self.residue.is_zero() {
            return Err(Error::domain("series already has a pole part"));
        }
        let c0 = &self.coeffs[0];
        if c0.degree().unwrap_or(0) > 0 {
            return Err(Error::Invariant(format!(
                "pole coefficient depends on gamma: {c0}"
            )));
        }
        if self.coeffs.len() < 2 {
            return Err(Error::domain("series too short to divide by w"));
        }
        Ok(Self::new(c0.coeff(0), self.coeffs[1..].to_vec()))
    }

    pub fn neg(&self) -> Self {
        let m1 = -Rational::one();
        Self::new(
            -self.residue.clone(),
            self.coeffs.iter().map(|c| c.scale(&m1)).collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn polynomial_arithmetic() {
        let g = GammaPoly::gamma();
        let p = g.add(&GammaPoly::constant(q(1, 2))); // γ + 1/2
        let sq = p.mul(&p);
        assert_eq!(sq.coeffs(), &[q(1, 4), q(1, 1), q(1, 1)]);
        assert_eq!(sq.degree(), Some(2));
        assert_eq!(sq.sub(&sq), GammaPoly::zero());
        assert_eq!(GammaPoly::zero().degree(), None);
        assert_eq!(sq.eval_exact(&q(1, 2)), q(1, 1));
        assert_eq!(p.to_string(), "1/2 1");
    }

    #[test]
    fn exp_of_gamma_times_w() {
        // exp(γ w) = Σ γ^n w^n / n!
        let w = RationalSeries::new(vec![q(0, 1), q(1, 1), q(0, 1), q(0, 1)]);
        let s = GammaPolySeries::linear_times(&q(0, 1), &q(1, 1), &w);
        let e = s.exp().unwrap();
        assert_eq!(
            e.coeffs()[3].coeffs(),
            &[q(0, 1), q(0, 1), q(0, 1), q(1, 6)]
        );
    }
}
