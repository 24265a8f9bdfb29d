//! Elementary functions at explicit precision.
//!
//! Each function evaluates at `p + GUARD` bits (plus whatever the argument
//! reduction costs) and rounds once at the end, so results are within one
//! ulp of the correctly rounded value at `p` except in vanishingly rare
//! near-tie cases. No function caches anything.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{BigReal, Precision};
use crate::error::{Error, Result};

const GUARD: u32 = 32;

/// Largest magnitude accepted by [`exp`]; keeps exponents well inside `i64`.
const EXP_LIMIT: f64 = 1e15;

fn log2_ceil(n: u64) -> u32 {
    64 - n.max(1).leading_zeros()
}

/// `atan(1/n) * 2^bits`, truncated, with error a few units in the last place.
fn atan_inv_fixed(n: u64, bits: u32) -> BigInt {
    let n2 = BigInt::from(n) * BigInt::from(n);
    let mut term = (BigInt::one() << bits as usize) / BigInt::from(n);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        let t = &term / BigInt::from(2 * k + 1);
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        term /= &n2;
        k += 1;
    }
    sum
}

/// π rounded to `p`, from Machin's formula.
pub fn pi(p: Precision) -> BigReal {
    let bits = p.bits() + GUARD + log2_ceil(u64::from(p.bits()));
    let fixed = atan_inv_fixed(5, bits) * 16 - atan_inv_fixed(239, bits) * 4;
    BigReal::from_parts(fixed, -i64::from(bits)).round(p)
}

/// ln 2 rounded to `p`, from `2 atanh(1/3)`.
pub fn ln2(p: Precision) -> BigReal {
    let bits = p.bits() + GUARD + log2_ceil(u64::from(p.bits()));
    let nine = BigInt::from(9);
    let mut term = (BigInt::one() << bits as usize) / BigInt::from(3);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !term.is_zero() {
        sum += &term / BigInt::from(2 * k + 1);
        term /= &nine;
        k += 1;
    }
    BigReal::from_parts(sum * 2, -i64::from(bits)).round(p)
}

fn below(x: &BigReal, log2_bound: i64) -> bool {
    match x.magnitude_exponent() {
        None => true,
        Some(e) => e < log2_bound,
    }
}

/// Exponential function.
pub fn exp(x: &BigReal, p: Precision) -> Result<BigReal> {
    if x.is_zero() {
        return Ok(BigReal::one());
    }
    let xf = x.to_f64();
    if xf.abs() > EXP_LIMIT {
        return Err(Error::domain(format!("exp argument {xf:e} out of range")));
    }
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    let k_bits = log2_ceil(k.unsigned_abs());
    let halvings = (f64::from(p.bits()).sqrt() / 2.0).ceil() as u32;
    let wp = p.with_guard(GUARD + halvings + 8 + k_bits);
    let r = x.sub(
        &ln2(wp.with_guard(k_bits)).mul_i64(k, wp.with_guard(k_bits)),
        wp,
    );
    let rs = r.ldexp(-i64::from(halvings));
    let mut sum = BigReal::one();
    let mut term = BigReal::one();
    let mut n = 1i64;
    let cutoff = -i64::from(wp.bits()) - 2;
    loop {
        term = term.mul(&rs, wp).div_i64(n, wp)?;
        if term.is_zero() || below(&term, cutoff) {
            break;
        }
        sum = sum.add(&term, wp);
        n += 1;
    }
    for _ in 0..halvings {
        sum = sum.square(wp);
    }
    Ok(sum.ldexp(k).round(p))
}

/// Natural logarithm.
pub fn log(x: &BigReal, p: Precision) -> Result<BigReal> {
    if !x.is_positive() {
        return Err(Error::domain("logarithm of a non-positive number"));
    }
    if *x == BigReal::one() {
        return Ok(BigReal::zero());
    }
    let one = BigReal::one();
    let delta = x.sub_exact(&one);
    let (mantissa, twos) = if below(&delta, 0) {
        // x in (1/2, 3/2): no binary splitting, it would cancel.
        (x.clone(), 0i64)
    } else {
        let e = x.magnitude_exponent().expect("x is positive");
        (x.ldexp(-e), e)
    };
    // Bits lost to 1 - x cancellation near x = 1.
    let near_one = mantissa
        .sub_exact(&one)
        .magnitude_exponent()
        .map(|e| (-e).max(0) as u32)
        .unwrap_or(0);
    let roots = (f64::from(p.bits()).sqrt() / 2.0).ceil() as u32;
    let wp = p.with_guard(GUARD + 2 * roots + near_one + 8);
    let mut y = mantissa;
    for _ in 0..roots {
        y = y.sqrt(wp)?;
    }
    let t = y.sub_exact(&one).div(&y.add_exact(&one), wp)?;
    let t2 = t.square(wp);
    let mut power = t.clone();
    let mut sum = t;
    let mut k = 1i64;
    let cutoff = -i64::from(wp.bits()) - 2 + sum.magnitude_exponent().unwrap_or(0);
    loop {
        power = power.mul(&t2, wp);
        let term = power.div_i64(2 * k + 1, wp)?;
        if term.is_zero() || below(&term, cutoff) {
            break;
        }
        sum = sum.add(&term, wp);
        k += 1;
    }
    let log_mantissa = sum.ldexp(1 + i64::from(roots));
    if twos == 0 {
        return Ok(log_mantissa.round(p));
    }
    let tb = log2_ceil(twos.unsigned_abs());
    let scaled = ln2(wp.with_guard(tb)).mul_i64(twos, wp);
    Ok(scaled.add(&log_mantissa, wp).round(p))
}

/// Taylor evaluation of `(sin r, cos r)` for small `|r|` with `halvings`
/// double-angle steps, all at `wp`.
fn sin_cos_reduced(r: &BigReal, wp: Precision, halvings: u32) -> Result<(BigReal, BigReal)> {
    if r.is_zero() {
        return Ok((BigReal::zero(), BigReal::one()));
    }
    let rs = r.ldexp(-i64::from(halvings));
    let rs2 = rs.square(wp);
    let cutoff = -i64::from(wp.bits()) - 4;
    let mut s = rs.clone();
    let mut term = rs.clone();
    let mut n = 1i64;
    loop {
        term = term.mul(&rs2, wp).div_i64((n + 1) * (n + 2), wp)?.neg();
        n += 2;
        if term.is_zero() || below(&term, cutoff + rs.magnitude_exponent().unwrap_or(0)) {
            break;
        }
        s = s.add(&term, wp);
    }
    let mut c = BigReal::one();
    let mut term = BigReal::one();
    let mut n = 0i64;
    loop {
        term = term.mul(&rs2, wp).div_i64((n + 1) * (n + 2), wp)?.neg();
        n += 2;
        if term.is_zero() || below(&term, cutoff) {
            break;
        }
        c = c.add(&term, wp);
    }
    for _ in 0..halvings {
        let s2 = s.mul(&c, wp).ldexp(1);
        let c2 = BigReal::one().sub(&s.square(wp).ldexp(1), wp);
        s = s2;
        c = c2;
    }
    Ok((s, c))
}

fn quadrant(k: &BigInt, s: BigReal, c: BigReal) -> (BigReal, BigReal) {
    let q = k.mod_floor_4();
    match q {
        0 => (s, c),
        1 => (c, s.neg()),
        2 => (s.neg(), c.neg()),
        _ => (c.neg(), s),
    }
}

trait ModFloor4 {
    fn mod_floor_4(&self) -> u8;
}

impl ModFloor4 for BigInt {
    fn mod_floor_4(&self) -> u8 {
        let m = self % BigInt::from(4);
        let m = if m.is_negative() { m + 4 } else { m };
        m.to_u8().expect("residue mod 4")
    }
}

/// `(sin x, cos x)`.
pub fn sin_cos(x: &BigReal, p: Precision) -> Result<(BigReal, BigReal)> {
    if x.is_zero() {
        return Ok((BigReal::zero(), BigReal::one()));
    }
    let halvings = (f64::from(p.bits()).sqrt() / 2.0).ceil() as u32;
    let int_bits = x.magnitude_exponent().unwrap_or(0).max(0) as u32;
    let mut extra = 0u32;
    for _ in 0..4 {
        let wp = p.with_guard(GUARD + 2 * halvings + 8 + extra);
        let rp = wp.with_guard(int_bits + 4);
        let half_pi = pi(rp).ldexp(-1);
        let k = x.div(&half_pi, rp)?.round_half_even();
        let r = x.sub(&half_pi.mul(&BigReal::from_bigint(k.clone()), rp), rp);
        let lost = match r.magnitude_exponent() {
            None => u32::MAX,
            Some(e) => (-e).max(0) as u32,
        };
        if lost > extra + 4 && lost != u32::MAX {
            extra = lost + 8;
            continue;
        }
        let (s, c) = sin_cos_reduced(&r.round(wp), wp, halvings)?;
        let (s, c) = quadrant(&k, s, c);
        return Ok((s.round(p), c.round(p)));
    }
    Err(Error::Invariant(
        "sin/cos argument reduction did not stabilise".into(),
    ))
}

pub fn sin(x: &BigReal, p: Precision) -> Result<BigReal> {
    Ok(sin_cos(x, p)?.0)
}

pub fn cos(x: &BigReal, p: Precision) -> Result<BigReal> {
    Ok(sin_cos(x, p)?.1)
}

/// `(sin πx, cos πx)`, exact at multiples of 1/2.
pub fn sin_cos_pi(x: &BigReal, p: Precision) -> Result<(BigReal, BigReal)> {
    let k = x.ldexp(1).round_half_even();
    let f = x.sub_exact(&BigReal::from_bigint(k.clone()).ldexp(-1));
    let (s, c) = if f.is_zero() {
        (BigReal::zero(), BigReal::one())
    } else {
        let halvings = (f64::from(p.bits()).sqrt() / 2.0).ceil() as u32;
        let wp = p.with_guard(GUARD + 2 * halvings + 8);
        let r = pi(wp.with_guard(8)).mul(&f, wp);
        sin_cos_reduced(&r, wp, halvings)?
    };
    let (s, c) = quadrant(&k, s, c);
    Ok((s.round(p), c.round(p)))
}

pub fn sin_pi(x: &BigReal, p: Precision) -> Result<BigReal> {
    Ok(sin_cos_pi(x, p)?.0)
}

pub fn cos_pi(x: &BigReal, p: Precision) -> Result<BigReal> {
    Ok(sin_cos_pi(x, p)?.1)
}

/// `x^n` by binary powering.
pub fn powi(x: &BigReal, n: i64, p: Precision) -> Result<BigReal> {
    if n == 0 {
        return Ok(BigReal::one());
    }
    let wp = p.with_guard(GUARD + 2 * log2_ceil(n.unsigned_abs()));
    let mut base = x.round(wp);
    let mut acc = BigReal::one();
    let mut e = n.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base, wp);
        }
        e >>= 1;
        if e > 0 {
            base = base.square(wp);
        }
    }
    if n < 0 {
        acc = acc.recip(wp)?;
    }
    Ok(acc.round(p))
}

/// `x^y` for `x > 0` (any `x` when `y` is an integer).
pub fn pow(x: &BigReal, y: &BigReal, p: Precision) -> Result<BigReal> {
    if let Some(n) = y.to_i64() {
        if n.unsigned_abs() < (1 << 20) {
            return powi(x, n, p);
        }
    }
    if !x.is_positive() {
        return Err(Error::domain("non-integer power of a non-positive number"));
    }
    let mag = (y.to_f64() * x.to_f64().ln()).abs().max(1.0);
    let extra = mag.log2().ceil() as u32;
    let wp = p.with_guard(GUARD + extra);
    let l = log(x, wp)?;
    exp(&l.mul(y, wp), wp).map(|v| v.round(p))
}
