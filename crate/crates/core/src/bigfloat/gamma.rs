//! Gamma function.
//!
//! For `x >= 1/2` the argument is shifted up to `y = x + n` and `ln Γ(y)` is
//! taken from the Stirling series
//!
//! ```text
//! ln Γ(y) = (y - 1/2) ln y - y + ln(2π)/2 + Σ_{k=1}^{K} B_{2k} / (2k (2k-1) y^{2k-1}) + R_K
//! ```
//!
//! For real `y > 0` the remainder satisfies `|R_K| <= |first omitted term|`,
//! so the sum is stopped only once a term falls below the absolute target
//! `2^-wp`. If the terms turn around before that happens the shift `n` is
//! increased and the evaluation restarted; the bound is therefore checked at
//! run time for every call. Arguments below 1/2 go through the reflection
//! formula.

use std::sync::RwLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::elementary::{exp, log, pi, sin_pi};
use super::{BigReal, Precision};
use crate::error::{Error, Result};

const GUARD: u32 = 32;

/// Even Bernoulli numbers `B_0, B_2, B_4, ...`, grown on demand.
static BERNOULLI_EVEN: RwLock<Vec<BigRational>> = RwLock::new(Vec::new());

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one(); n + 1];
    for k in 1..n {
        row[k] = &row[k - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
    }
    row
}

/// `B_{2k}` for `k < count`.
pub(crate) fn bernoulli_even(count: usize) -> Vec<BigRational> {
    {
        let cache = BERNOULLI_EVEN.read().expect("bernoulli cache poisoned");
        if cache.len() >= count {
            return cache[..count].to_vec();
        }
    }
    let mut cache = BERNOULLI_EVEN.write().expect("bernoulli cache poisoned");
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    // Σ_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1, with B_1 = -1/2 and the
    // remaining odd-index numbers zero.
    while cache.len() < count {
        let m = 2 * cache.len();
        let row = binomial_row(m + 1);
        let mut acc =
            BigRational::from_integer(row[1].clone()) * BigRational::new((-1).into(), 2.into());
        acc += BigRational::from_integer(row[0].clone()) * &cache[0];
        for (i, b) in cache.iter().enumerate().skip(1) {
            acc += BigRational::from_integer(row[2 * i].clone()) * b;
        }
        let b_m = -acc / BigRational::from_integer(BigInt::from(m + 1));
        cache.push(b_m);
    }
    cache[..count].to_vec()
}

fn is_nonpositive_integer(x: &BigReal) -> bool {
    x.is_integer() && !x.is_positive()
}

/// Γ(x).
pub fn gamma(x: &BigReal, p: Precision) -> Result<BigReal> {
    if is_nonpositive_integer(x) {
        return Err(Error::domain(format!(
            "gamma has a pole at the non-positive integer {}",
            x.to_f64()
        )));
    }
    let half = BigReal::from_parts(1.into(), -1);
    if *x < half {
        // Γ(x) = π / (sin(πx) Γ(1-x))
        let wp = p.with_guard(GUARD);
        let one_minus = BigReal::one().sub_exact(x);
        let g = gamma(&one_minus, wp)?;
        let s = sin_pi(x, wp)?;
        let den = s.mul(&g, wp);
        return Ok(pi(wp).div(&den, wp)?.round(p));
    }
    if let Some(n) = x.to_i64() {
        if n <= 64 {
            let mut acc = BigInt::one();
            for k in 2..n {
                acc *= k;
            }
            return Ok(BigReal::from_bigint(acc).round(p));
        }
    }
    gamma_stirling(x, p)
}

/// 1/Γ(x), zero at the poles.
pub fn rgamma(x: &BigReal, p: Precision) -> Result<BigReal> {
    if is_nonpositive_integer(x) {
        return Ok(BigReal::zero());
    }
    let wp = p.with_guard(8);
    Ok(gamma(x, wp)?.recip(wp)?.round(p))
}

fn gamma_stirling(x: &BigReal, p: Precision) -> Result<BigReal> {
    let mut threshold = (0.12 * f64::from(p.bits())).ceil().max(12.0);
    for _ in 0..6 {
        match gamma_shifted(x, p, threshold)? {
            Some(v) => return Ok(v),
            None => threshold *= 2.0,
        }
    }
    Err(Error::Invariant(
        "Stirling series for gamma could not reach the requested precision".into(),
    ))
}

/// One attempt at a given shift threshold; `None` if the error bound could
/// not be met.
fn gamma_shifted(x: &BigReal, p: Precision, threshold: f64) -> Result<Option<BigReal>> {
    let xf = x.to_f64();
    let shift = if xf < threshold {
        (threshold - xf).ceil() as i64
    } else {
        0
    };
    let y_approx = xf + shift as f64;
    // ln Γ(y) ~ y ln y: absolute error in the log becomes relative error.
    let log_bits = (y_approx * y_approx.ln()).abs().max(2.0).log2().ceil() as u32;
    let shift_bits = 64 - (shift as u64).leading_zeros();
    let wp = p.with_guard(GUARD + log_bits + shift_bits + 8);

    let y = x.add_exact(&BigReal::from_i64(shift));
    let mut product = BigReal::one();
    for i in 0..shift {
        product = product.mul(&x.add_exact(&BigReal::from_i64(i)), wp);
    }

    let half = BigReal::from_parts(1.into(), -1);
    let ln_y = log(&y, wp)?;
    let two_pi = pi(wp).ldexp(1);
    let mut sum = y
        .sub_exact(&half)
        .mul(&ln_y, wp)
        .sub(&y, wp)
        .add(&log(&two_pi, wp)?.ldexp(-1), wp);

    let target = -i64::from(wp.bits());
    let y_sq = y.square(wp);
    let mut y_pow = y.clone(); // y^(2k-1)
    let mut prev_mag: Option<i64> = None;
    let mut k = 1usize;
    loop {
        let bern = bernoulli_even(k + 1);
        let coef = &bern[k] / BigRational::from_integer(BigInt::from((2 * k) * (2 * k - 1)));
        let term = BigReal::from_ratio(&coef, wp).div(&y_pow, wp)?;
        let mag = term.magnitude_exponent().unwrap_or(i64::MIN);
        if mag < target {
            // |R| <= |this term| < 2^-wp: bound met.
            break;
        }
        if let Some(prev) = prev_mag {
            if mag > prev {
                return Ok(None);
            }
        }
        prev_mag = Some(mag);
        sum = sum.add(&term, wp);
        y_pow = y_pow.mul(&y_sq, wp);
        k += 1;
    }
    let g = exp(&sum, wp)?;
    Ok(Some(g.div(&product, wp)?.round(p)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::decimal::parse_decimal;

    fn prec(bits: u32) -> Precision {
        Precision::new(bits).unwrap()
    }

    fn r(v: f64) -> BigReal {
        BigReal::from_f64(v).unwrap()
    }

    fn ulps(a: &BigReal, b: &BigReal, p: Precision) -> f64 {
        let d = a.sub_exact(b).abs();
        d.div(&a.ulp(p), prec(64)).unwrap().to_f64()
    }

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli_even(7);
        let expect = [
            (1, 1),
            (1, 6),
            (-1, 30),
            (1, 42),
            (-1, 30),
            (5, 66),
            (-691, 2730),
        ];
        for (got, (n, d)) in b.iter().zip(expect) {
            assert_eq!(*got, BigRational::new(n.into(), d.into()));
        }
    }

    #[test]
    fn integer_and_half_integer_values() {
        let p = prec(192);
        assert_eq!(gamma(&r(1.0), p).unwrap(), BigReal::one());
        assert_eq!(gamma(&r(6.0), p).unwrap(), r(120.0));
        let sqrt_pi = pi(p).sqrt(p).unwrap();
        assert!(ulps(&gamma(&r(0.5), p).unwrap(), &sqrt_pi, p) <= 4.0);
        // Γ(-1/2) = -2√π
        let v = gamma(&r(-0.5), p).unwrap();
        assert!(ulps(&v, &sqrt_pi.ldexp(1).neg(), p) <= 4.0);
    }

    #[test]
    fn poles_are_rejected() {
        let p = prec(128);
        for v in [0.0, -1.0, -7.0] {
            assert!(gamma(&r(v), p).is_err());
            assert!(rgamma(&r(v), p).unwrap().is_zero());
        }
    }

    #[test]
    fn gamma_five_quarters_recurrence_and_reference() {
        let p = prec(256);
        let g54 = gamma(&r(1.25), p).unwrap();
        let g94 = gamma(&r(2.25), p).unwrap();
        assert!(ulps(&g94, &g54.mul(&r(1.25), p), p) <= 4.0);
        // Γ(5/4) to 40 digits (mpmath, 60-digit working precision).
        let reference =
            parse_decimal("0.9064024770554770779826712889669180007488", prec(256)).unwrap();
        let diff = g54.sub_exact(&reference).abs().to_f64();
        assert!(diff < 1e-39, "diff {diff:e}");
    }

    #[test]
    fn large_and_mid_arguments() {
        let p = prec(160);
        // Γ(30.5) = (59)!! / 2^30 * √π
        let mut dfact = BigInt::one();
        let mut k = 1u32;
        while k <= 59 {
            dfact *= k;
            k += 2;
        }
        let expected = BigReal::from_bigint(dfact)
            .ldexp(-30)
            .mul(&pi(p.with_guard(8)).sqrt(p.with_guard(8)).unwrap(), p);
        assert!(ulps(&gamma(&r(30.5), p).unwrap(), &expected, p) <= 4.0);
    }
}
