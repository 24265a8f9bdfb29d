//! The saddle-point map `w²/2 = τ - ln τ - 1` (branch `w ~ τ - 1`) and the
//! coefficient polynomials `g_k(γ)` of
//!
//! ```text
//! τ^(γ-1) / (1 - τ) · dτ/dw = -1/w + Σ_k g_k(γ) w^k.
//! ```
//!
//! Everything here is exact rational arithmetic.

use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gammapoly::GammaPolySeries;
use super::{GammaPoly, Rational, RationalSeries};
use crate::bigfloat::{BigReal, Precision};
use crate::error::{Error, Result};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `τ - ln τ - 1 - w²/2` for a candidate `τ(w)` with `τ(0) = 1`.
pub fn saddle_identity_residual(tau: &RationalSeries) -> Result<RationalSeries> {
    let order = tau.order();
    let one = RationalSeries::monomial(Rational::one(), 0, order);
    let half_w2 = RationalSeries::monomial(q(1, 2), 2, order);
    Ok(tau.sub(&tau.log()?).sub(&one).sub(&half_w2))
}

/// Series reversion of the saddle-point map: `τ(w) = 1 + w + w²/3 + ...`
/// known exactly through `w^order`.
///
/// Newton iteration `τ ← τ - F(τ)/F'(τ)` with `F(τ) = τ - ln τ - 1 - w²/2`
/// and `F'(τ) = (τ - 1)/τ`; since `τ - 1 = w·u(w)` with `u(0) = 1` the
/// correction is `(F/w)·τ/u`, which stays a power series.
pub fn revert_saddle_map(order: usize) -> Result<RationalSeries> {
    if order == 0 {
        return Err(Error::Usage("reversion order must be at least 1".into()));
    }
    let n = order + 1;
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[0] = Rational::one();
    coeffs[1] = Rational::one();
    let mut tau = RationalSeries::new(coeffs);
    let one = RationalSeries::monomial(Rational::one(), 0, n);

    let mut converged = false;
    for _ in 0..64 {
        let residual = saddle_identity_residual(&tau)?;
        let f_over_w = residual.shift_down(1)?;
        let u = tau.sub(&one).shift_down(1)?;
        let correction = f_over_w.mul(&tau.truncate(n - 1)).mul(&u.recip()?);
        if correction.is_zero() {
            converged = true;
            break;
        }
        let mut next: Vec<Rational> = tau.truncate(n - 1).sub(&correction).coeffs().to_vec();
        // The top coefficient is not determined by a residual known to w^n.
        next.push(Rational::zero());
        tau = RationalSeries::new(next);
    }
    if !converged {
        return Err(Error::Invariant(
            "Newton reversion of the saddle map did not converge".into(),
        ));
    }
    let tau = tau.truncate(order);
    if !saddle_identity_residual(&tau)?.is_zero() {
        return Err(Error::Invariant(
            "reverted saddle map fails the defining identity".into(),
        ));
    }
    Ok(tau)
}

/// The full expansion `τ^(γ-1)/(1-τ) · dτ/dw` through `w^kmax`, including
/// its pole part.
///
/// `τ^(γ-1) = exp((γ-1) ln τ)`, `1 - τ = -w·u(w)`, so the expansion is
/// `-(1/w) · exp((γ-1) ln τ) · τ'(w) / u(w)`.
pub fn g_expansion(kmax: usize) -> Result<GammaPolySeries> {
    let tau = revert_saddle_map(kmax + 2)?;
    let order = tau.order();
    let log_tau = tau.log()?;
    let power =
        GammaPolySeries::linear_times(&-Rational::one(), &Rational::one(), &log_tau).exp()?;
    let one = RationalSeries::monomial(Rational::one(), 0, order);
    let u = tau.sub(&one).shift_down(1)?;
    let ratio = tau.derivative().mul(&u.recip()?);
    let expansion = power.mul_series(&ratio).neg().divide_by_w()?;
    if *expansion.residue() != -Rational::one() {
        return Err(Error::Invariant(format!(
            "pole part of the g-expansion is {}/w, expected -1/w",
            expansion.residue()
        )));
    }
    Ok(expansion)
}

/// `g_0(γ), ..., g_kmax(γ)`.
pub fn g_polynomials(kmax: usize) -> Result<Vec<GammaPoly>> {
    let expansion = g_expansion(kmax)?;
    Ok(expansion.coeffs()[..=kmax].to_vec())
}

static G_CACHE: RwLock<Option<Arc<Vec<GammaPoly>>>> = RwLock::new(None);

/// Shared, build-once family `g_0..g_K` with `K >= kmax`.
///
/// Readers never see a partially built family: a larger request builds a new
/// vector and swaps the `Arc`.
pub fn g_family(kmax: usize) -> Result<Arc<Vec<GammaPoly>>> {
    {
        let cache = G_CACHE.read().expect("g-polynomial cache poisoned");
        if let Some(family) = cache.as_ref() {
            if family.len() > kmax {
                return Ok(Arc::clone(family));
            }
        }
    }
    let built = Arc::new(g_polynomials(kmax)?);
    let mut cache = G_CACHE.write().expect("g-polynomial cache poisoned");
    match cache.as_ref() {
        Some(existing) if existing.len() >= built.len() => Ok(Arc::clone(existing)),
        _ => {
            *cache = Some(Arc::clone(&built));
            Ok(built)
        }
    }
}

/// `ĝ_k = 6^k g_k`, which keeps the denominators small.
pub fn scale_ghat(k: usize, g: &GammaPoly) -> Result<GammaPoly> {
    if k % 2 != 0 {
        return Err(Error::Usage(format!(
            "ĝ_k is defined for even k only, got k = {k}"
        )));
    }
    let six_k = BigInt::from(6).pow(k as u32);
    Ok(g.scale(&Rational::from_integer(six_k)))
}

/// `ĝ_0, ĝ_2, ..., ĝ_{2m}` with `2m <= kmax`.
pub fn ghat_polynomials(kmax: usize) -> Result<Vec<GammaPoly>> {
    let gs = g_polynomials(kmax)?;
    (0..=kmax)
        .step_by(2)
        .map(|k| scale_ghat(k, &gs[k]))
        .collect()
}

/// Evaluate a coefficient polynomial at a numeric `γ`.
pub fn eval_gamma_poly(poly: &GammaPoly, gamma: &BigReal, p: Precision) -> BigReal {
    poly.eval(gamma, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(v: &[(i64, i64)]) -> GammaPoly {
        GammaPoly::new(v.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn reversion_low_orders() {
        let tau = revert_saddle_map(5).unwrap();
        assert_eq!(
            tau.coeffs(),
            &[q(1, 1), q(1, 1), q(1, 3), q(1, 36), q(-1, 270), q(1, 4320)]
        );
        assert_eq!(revert_saddle_map(1).unwrap().coeffs(), &[q(1, 1), q(1, 1)]);
        assert!(revert_saddle_map(0).is_err());
    }

    #[test]
    fn first_g_polynomials() {
        let gs = g_polynomials(2).unwrap();
        assert_eq!(gs[0], poly(&[(2, 3), (-1, 1)]));
        // 36 g_2 = (46 - 225γ + 270γ² - 90γ³)/15
        let ghat2 = scale_ghat(2, &gs[2]).unwrap();
        assert_eq!(ghat2, poly(&[(46, 15), (-15, 1), (18, 1), (-6, 1)]));
        assert_eq!(ghat2.eval_exact(&q(1, 1)), q(1, 15));
        assert!(scale_ghat(1, &gs[1]).is_err());
        assert_eq!(scale_ghat(0, &gs[0]).unwrap(), gs[0]);
    }

    #[test]
    fn odd_coefficients_are_generated_and_nonzero() {
        let gs = g_polynomials(5).unwrap();
        for k in [1, 3, 5] {
            assert!(!gs[k].is_zero(), "g_{k} vanished");
        }
    }

    #[test]
    fn cache_grows_and_serves_prefixes() {
        let small = g_family(3).unwrap();
        let large = g_family(9).unwrap();
        assert!(large.len() >= 10);
        assert_eq!(small[..4], large[..4]);
        let again = g_family(4).unwrap();
        assert!(again.len() >= 5);
    }

    #[test]
    fn numeric_evaluation() {
        let p = Precision::new(128).unwrap();
        let gs = g_polynomials(0).unwrap();
        let two_thirds = BigReal::from_i64(2).div_i64(3, p).unwrap();
        assert_eq!(eval_gamma_poly(&gs[0], &BigReal::zero(), p), two_thirds);
        let gamma = crate::bigfloat::parse_decimal("0.2", p).unwrap();
        let v = eval_gamma_poly(&gs[0], &gamma, p);
        let expect = crate::bigfloat::parse_decimal("7/15", p).unwrap();
        assert!(crate::bigfloat::ulp_distance(&v, &expect, &expect, p) <= 2.0);
    }
}
