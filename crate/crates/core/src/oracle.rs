//! Reference values from convergent series and connection formulas.
//!
//! Nothing here uses an asymptotic expansion. The remainders `F_ν` and `G_ν`
//! subtract an exponentially large sum from a function value, so they are
//! evaluated with a cancellation budget: the working precision carries
//! `target_digits + ⌈2x log₁₀ e⌉ + cancellation_guard` decimal digits. The
//! digits actually lost are measured after the fact; if they exceed what the
//! precision can absorb the call fails with [`Error::Precision`] instead of
//! returning a wrong value.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::bigfloat::{exp, gamma, pi, pow, rgamma, sin_cos_pi, BigComplex, BigReal, Precision};
use crate::coeffs::{a_coeffs, optimal_truncation, BesselOrder, TruncationRule};
use crate::error::{Error, Result};
use crate::expansions::StokesSign;
use crate::Rational;

/// Accuracy request for an oracle evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    target_digits: u32,
    cancellation_guard: u32,
    bits_override: Option<u32>,
}

impl OracleConfig {
    pub const MIN_DIGITS: u32 = 10;
    pub const DEFAULT_GUARD: u32 = 15;

    pub fn new(target_digits: u32) -> Result<Self> {
        if target_digits < Self::MIN_DIGITS {
            return Err(Error::Usage(format!(
                "oracle needs at least {} target digits, got {target_digits}",
                Self::MIN_DIGITS
            )));
        }
        Ok(OracleConfig {
            target_digits,
            cancellation_guard: Self::DEFAULT_GUARD,
            bits_override: None,
        })
    }

    pub fn with_guard(mut self, digits: u32) -> Self {
        self.cancellation_guard = digits;
        self
    }

    /// Force the working precision. Calls whose cancellation budget needs
    /// more bits fail with [`Error::Precision`].
    pub fn with_bits(mut self, bits: u32) -> Self {
        self.bits_override = Some(bits);
        self
    }

    pub fn target_digits(&self) -> u32 {
        self.target_digits
    }

    pub fn cancellation_guard(&self) -> u32 {
        self.cancellation_guard
    }

    pub fn bits_override(&self) -> Option<u32> {
        self.bits_override
    }

    /// Working precision for a computation that loses `lost_digits`.
    pub fn working_precision(&self, lost_digits: u32) -> Result<Precision> {
        let needed =
            Precision::from_digits(self.target_digits + lost_digits + self.cancellation_guard);
        match self.bits_override {
            None => Ok(needed),
            Some(bits) if bits < needed.bits() => Err(Error::Precision {
                needed: needed.bits(),
                available: bits,
            }),
            Some(bits) => Precision::new(bits),
        }
    }

    /// Precision of returned values: the target plus the guard digits.
    pub fn output_precision(&self) -> Precision {
        Precision::from_digits(self.target_digits + self.cancellation_guard)
    }

    fn target_bits(&self) -> u32 {
        Precision::from_digits(self.target_digits).bits()
    }

    /// Fails if `lost_bits` of cancellation leave fewer than the target bits
    /// at precision `wp`.
    fn check_loss(&self, lost_bits: i64, wp: Precision) -> Result<()> {
        let needed = i64::from(self.target_bits()) + lost_bits.max(0) + 8;
        if needed > i64::from(wp.bits()) {
            return Err(Error::Precision {
                needed: needed as u32,
                available: wp.bits(),
            });
        }
        Ok(())
    }
}

/// `⌈2x log₁₀ e⌉`: decimal digits lost when an `e^{x}`-sized sum cancels
/// down to an `e^{-x}`-sized remainder.
pub fn cancellation_digits(x: &Rational) -> u32 {
    let xf = x.to_f64().unwrap_or(f64::MAX).abs();
    (2.0 * xf * std::f64::consts::LOG10_E).ceil() as u32
}

fn mag(x: &BigReal) -> i64 {
    x.magnitude_exponent().unwrap_or(i64::MIN / 4)
}

fn mag_c(z: &BigComplex) -> i64 {
    mag(&z.re).max(mag(&z.im))
}

fn require_positive(x: &Rational) -> Result<()> {
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::domain(format!("x must be positive, got {x}")))
    }
}

fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

/// `I_ν(x) = (x/2)^ν Σ (x²/4)^k / (k! Γ(k+ν+1))` at precision `wp`, with the
/// bits lost to cancellation among the terms.
fn i_series_at(nu: &Rational, x: &BigReal, wp: Precision) -> Result<(BigReal, i64)> {
    if nu.is_integer() && nu.is_negative() {
        return Err(Error::domain(format!(
            "the series for I_ν needs ν not a negative integer, got {nu}"
        )));
    }
    let ip = wp.with_guard(24);
    let nur = BigReal::from_ratio(nu, ip);
    let quarter_x2 = x.square(ip).ldexp(-2);
    let peak_index = x.to_f64();
    let mut term = BigReal::one();
    let mut sum = BigReal::one();
    let mut peak = 0i64;
    let mut quiet = 0;
    let mut k = 0i64;
    loop {
        k += 1;
        let den = nur.add(&BigReal::from_i64(k), ip).mul_i64(k, ip);
        term = term.mul(&quarter_x2, ip).div(&den, ip)?;
        sum = sum.add(&term, ip);
        peak = peak.max(mag(&term));
        if term.is_zero()
            || (k as f64 > peak_index && mag(&term) < mag(&sum) - i64::from(ip.bits()))
        {
            quiet += 1;
            if quiet >= 3 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    let lead = pow(&x.ldexp(-1), &nur, ip)?.mul(&rgamma(&nur.add(&BigReal::one(), ip), ip)?, ip);
    let lost = (peak.max(0) - mag(&sum)).max(0);
    Ok((lead.mul(&sum, ip).round(wp), lost))
}

/// `K_ν(x) = π/2 · (I_{-ν}(x) - I_ν(x)) / sin πν` at precision `wp`, with the
/// bits lost in the difference.
fn k_real_at(nu: &Rational, x: &BigReal, wp: Precision) -> Result<(BigReal, BigReal, i64)> {
    if nu.is_integer() {
        return Err(Error::domain(format!(
            "K_ν for integer ν = {nu} needs a limit formula, which is not implemented"
        )));
    }
    let (i_pos, _) = i_series_at(nu, x, wp)?;
    let (i_neg, _) = i_series_at(&-nu.clone(), x, wp)?;
    let diff = i_neg.sub_exact(&i_pos);
    let lost = (mag(&i_neg).max(mag(&i_pos)) - mag(&diff)).max(0);
    let s = crate::bigfloat::sin_pi(&BigReal::from_ratio(nu, wp), wp)?;
    let k = pi(wp).ldexp(-1).mul(&diff, wp).div(&s, wp)?;
    Ok((k, i_pos, lost))
}

/// `I_ν(x)` from its power series.
pub fn bessel_i_series(nu: &BesselOrder, x: &Rational, cfg: &OracleConfig) -> Result<BigReal> {
    require_positive(x)?;
    let wp = cfg.working_precision(0)?;
    let (v, lost) = i_series_at(nu.nu(), &BigReal::from_ratio(x, wp), wp)?;
    cfg.check_loss(lost, wp)?;
    Ok(v.round(cfg.output_precision()))
}

/// `K_ν(x)` for real `x > 0` and non-integer `ν`.
pub fn bessel_k_real(nu: &BesselOrder, x: &Rational, cfg: &OracleConfig) -> Result<BigReal> {
    require_positive(x)?;
    let wp = cfg.working_precision(cancellation_digits(x))?;
    let (k, _, lost) = k_real_at(nu.nu(), &BigReal::from_ratio(x, wp), wp)?;
    cfg.check_loss(lost, wp)?;
    Ok(k.round(cfg.output_precision()))
}

/// `K_ν(x e^{±πi}) = e^{∓πνi} K_ν(x) ∓ iπ I_ν(x)`, at precision `wp`.
fn k_line_at(
    nu: &Rational,
    x: &BigReal,
    sign: StokesSign,
    wp: Precision,
) -> Result<(BigComplex, i64)> {
    let (k, i, lost) = k_real_at(nu, x, wp)?;
    let (s, c) = sin_cos_pi(&BigReal::from_ratio(nu, wp), wp)?;
    let im = s.mul(&k, wp).add(&pi(wp).mul(&i, wp), wp);
    let im = if sign == StokesSign::Plus {
        im.neg()
    } else {
        im
    };
    Ok((BigComplex::new(c.mul(&k, wp), im), lost))
}

pub fn k_on_stokes_line(
    nu: &BesselOrder,
    x: &Rational,
    sign: StokesSign,
    cfg: &OracleConfig,
) -> Result<BigComplex> {
    require_positive(x)?;
    let wp = cfg.working_precision(cancellation_digits(x))?;
    let (v, lost) = k_line_at(nu.nu(), &BigReal::from_ratio(x, wp), sign, wp)?;
    cfg.check_loss(lost, wp)?;
    Ok(v.round(cfg.output_precision()))
}

/// `Σ_{k<m_o} (-1)^k a_k(ν)/x^k`.
fn dominant_sum(
    nu: &BesselOrder,
    x: &Rational,
    rule: TruncationRule,
    wp: Precision,
) -> Result<BigReal> {
    let trunc = optimal_truncation(
        &(x * Rational::from_integer(2.into())),
        &Rational::zero(),
        rule,
    )?;
    let m_o = trunc.m_o() as usize;
    let a = a_coeffs(nu, m_o - 1, wp);
    let step = BigReal::from_ratio(&-x.recip(), wp);
    let mut power = BigReal::one();
    let mut sum = BigReal::zero();
    for ak in &a {
        sum = sum.add(&ak.mul(&power, wp), wp);
        power = power.mul(&step, wp);
    }
    Ok(sum)
}

/// `F_ν(x) = I_ν(x) - e^x/√(2πx) Σ_{k<m_o} (-1)^k a_k(ν)/x^k`, real.
pub fn f_remainder(
    nu: &BesselOrder,
    x: &Rational,
    rule: TruncationRule,
    cfg: &OracleConfig,
) -> Result<BigReal> {
    require_positive(x)?;
    let wp = cfg.working_precision(cancellation_digits(x))?;
    let xr = BigReal::from_ratio(x, wp);
    let (i, _) = i_series_at(nu.nu(), &xr, wp)?;
    let root = pi(wp).mul(&xr, wp).ldexp(1).sqrt(wp)?;
    let dominant = exp(&xr, wp)?
        .div(&root, wp)?
        .mul(&dominant_sum(nu, x, rule, wp)?, wp);
    let f = i.sub(&dominant, wp);
    cfg.check_loss(mag(&i) - mag(&f), wp)?;
    Ok(f.round(cfg.output_precision()))
}

/// `G_ν(x) = K_ν(x e^{±πi}) ± i √(π/2x) e^x Σ_{k<m_o} (-1)^k a_k(ν)/x^k`.
pub fn g_remainder(
    nu: &BesselOrder,
    x: &Rational,
    sign: StokesSign,
    rule: TruncationRule,
    cfg: &OracleConfig,
) -> Result<BigComplex> {
    require_positive(x)?;
    let wp = cfg.working_precision(cancellation_digits(x))?;
    let xr = BigReal::from_ratio(x, wp);
    let (k, lost_k) = k_line_at(nu.nu(), &xr, sign, wp)?;
    let root = pi(wp).div(&pi(wp).mul(&xr, wp).ldexp(1).sqrt(wp)?, wp)?;
    let dominant = root
        .mul(&exp(&xr, wp)?, wp)
        .mul(&dominant_sum(nu, x, rule, wp)?, wp)
        .mul_i64(sign.as_i64(), wp);
    let g = BigComplex::new(k.re.clone(), k.im.add(&dominant, wp));
    cfg.check_loss(lost_k.max(mag(&k.im) - mag_c(&g)), wp)?;
    Ok(g.round(cfg.output_precision()))
}

/// Taylor series of `₁F₁(a; b; z)` at precision `wp`, with the bits lost to
/// cancellation (peak term against the sum).
fn m_series_at(
    a: &Rational,
    b: &Rational,
    z: &BigComplex,
    wp: Precision,
) -> Result<(BigComplex, i64)> {
    let ip = wp.with_guard(24);
    let radius = z.abs(Precision::new(64)?).to_f64();
    let mut term = BigComplex::from_real(BigReal::one());
    let mut sum = term.clone();
    let mut peak = 0i64;
    let mut quiet = 0;
    let mut k = 0u64;
    loop {
        k += 1;
        let kq = Rational::from_integer(k.into());
        let one = Rational::from_integer(1.into());
        let ratio = (a + &kq - &one) / ((b + &kq - &one) * &kq);
        term = term.mul(z, ip).scale(&BigReal::from_ratio(&ratio, ip), ip);
        sum = sum.add(&term, ip);
        peak = peak.max(mag_c(&term));
        let zero_term = term.re.is_zero() && term.im.is_zero();
        if zero_term || (k as f64 > radius && mag_c(&term) < mag_c(&sum) - i64::from(ip.bits())) {
            quiet += 1;
            if quiet >= 3 || zero_term {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    let lost = (peak.max(0) - mag_c(&sum)).max(0);
    Ok((sum.round(wp), lost))
}

/// Evaluate at the configured precision, or in auto mode retry with more
/// bits until the measured cancellation fits.
fn adaptive<T>(
    cfg: &OracleConfig,
    estimate_bits: u32,
    mut f: impl FnMut(Precision) -> Result<(T, i64)>,
) -> Result<(T, Precision)> {
    if cfg.bits_override.is_some() {
        let wp = cfg.working_precision(0)?;
        let (v, lost) = f(wp)?;
        cfg.check_loss(lost, wp)?;
        return Ok((v, wp));
    }
    let mut wp = cfg.working_precision(0)?.with_guard(estimate_bits);
    for _ in 0..8 {
        let (v, lost) = f(wp)?;
        match cfg.check_loss(lost, wp) {
            Ok(()) => return Ok((v, wp)),
            Err(Error::Precision { needed, .. }) => {
                wp = Precision::new(needed + 64)?;
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::Invariant("adaptive precision did not settle".into()))
}

/// `₁F₁(a; b; z)` from its Taylor series.
pub fn kummer_m_series(
    a: &Rational,
    b: &Rational,
    z: &BigComplex,
    cfg: &OracleConfig,
) -> Result<BigComplex> {
    if is_nonpositive_integer(b) {
        return Err(Error::domain(format!(
            "₁F₁ needs b not a non-positive integer, got {b}"
        )));
    }
    let estimate = if z.re.is_negative() {
        (2.0 * z.re.abs().to_f64() * std::f64::consts::LOG2_E).ceil() as u32
    } else {
        0
    };
    let (v, _) = adaptive(cfg, estimate, |wp| m_series_at(a, b, z, wp))?;
    Ok(v.round(cfg.output_precision()))
}

/// `U(a, b, x e^{±πi})` from the two-`₁F₁` connection formula
///
/// `U = Γ(1-b)/Γ(a-b+1) M(a,b,z) + Γ(b-1)/Γ(a) z^{1-b} M(a-b+1, 2-b, z)`
///
/// with `z^{1-b} = x^{1-b} e^{±πi(1-b)}`.
pub fn u_on_stokes_line(
    a: &Rational,
    b: &Rational,
    x: &Rational,
    sign: StokesSign,
    cfg: &OracleConfig,
) -> Result<BigComplex> {
    require_positive(x)?;
    if b.is_integer() {
        return Err(Error::domain(format!(
            "the connection formula for U needs non-integer b, got {b}"
        )));
    }
    let one = Rational::from_integer(1.into());
    let two = Rational::from_integer(2.into());
    let xf = x.to_f64().unwrap_or(f64::MAX);
    let estimate = (2.0 * xf * std::f64::consts::LOG2_E).ceil() as u32;
    let (v, _) = adaptive(cfg, estimate, |wp| {
        let ip = wp.with_guard(16);
        let z = BigComplex::from_real(BigReal::from_ratio(&-x.clone(), ip));
        let (m1, l1) = m_series_at(a, b, &z, ip)?;
        let (m2, l2) = m_series_at(&(a - b + &one), &(&two - b), &z, ip)?;
        let c1 = gamma(&BigReal::from_ratio(&(&one - b), ip), ip)?
            .mul(&rgamma(&BigReal::from_ratio(&(a - b + &one), ip), ip)?, ip);
        let c2 = gamma(&BigReal::from_ratio(&(b - &one), ip), ip)?
            .mul(&rgamma(&BigReal::from_ratio(a, ip), ip)?, ip);
        let e = BigReal::from_ratio(&(&one - b), ip);
        let (s, c) = sin_cos_pi(&e, ip)?;
        let phase = BigComplex::new(c, s.mul_i64(sign.as_i64(), ip));
        let zpow = phase.scale(&pow(&BigReal::from_ratio(x, ip), &e, ip)?, ip);
        let t1 = m1.scale(&c1, ip);
        let t2 = m2.mul(&zpow, ip).scale(&c2, ip);
        let u = t1.add(&t2, ip);
        let lost = l1.max(l2) + (mag_c(&t1).max(mag_c(&t2)) - mag_c(&u)).max(0);
        Ok((u.round(wp), lost))
    })?;
    Ok(v.round(cfg.output_precision()))
}
