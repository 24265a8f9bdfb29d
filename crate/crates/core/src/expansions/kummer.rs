use num_traits::Signed;

use super::{require_positive, sum_complex, ExpansionKind, ExpansionResult, StokesSign, Work};
use crate::bigfloat::{exp, gamma, pi, pow, rgamma, sin_cos_pi, BigComplex, BigReal, Precision};
use crate::coeffs::{CoefficientSet, KummerParams, TruncationRule};
use crate::error::{Error, Result};
use crate::Rational;

/// Exponentially improved expansion of `U(a, b, x e^{±πi})`:
///
/// ```text
/// (x e^{±πi})^{-a} Σ_{k<m_o} (a)_k (1+a-b)_k / (k! x^k)
///   ± 2πi e^{∓πia} x^{a-b} e^{-x} / (Γ(a) Γ(1+a-b))
///     · {½ Σ_{j<M} (-1)^j A_j x^{-j} ∓ i/√(2πx) Σ_{j<M} (-1)^j B_j x^{-j}}
/// ```
///
/// The branch factors are built from `x^{-a}` and an explicit phase
/// `e^{∓πia}`; the brace is returned as the Stokes multiplier.
pub fn u_stokes(
    params: &KummerParams,
    x: &Rational,
    m: usize,
    sign: StokesSign,
    rule: TruncationRule,
    p: Precision,
) -> Result<ExpansionResult> {
    let w = Work::new(p, m)?;
    require_positive(x)?;
    if params.u_exponential_part_vanishes() {
        return Err(Error::degenerate(format!(
            "{params}: a or 1+a-b is a non-positive integer, so the exponentially small \
             part vanishes identically; use the algebraic series alone"
        )));
    }
    let set = CoefficientSet::kummer(params, x, m, rule, w.wp)?;
    let m_o = set.trunc().m_o() as usize;
    let s = sign.as_i64();
    let xr = w.real(x);
    let ar = w.real(params.a());
    let (sa, ca) = sin_cos_pi(&ar, w.wp)?;

    // (x e^{±πi})^{-a} = x^{-a} (cos πa ∓ i sin πa)
    let x_pow = pow(&xr, &ar.neg(), w.wp)?;
    let pref_dom = BigComplex::new(ca.mul(&x_pow, w.wp), sa.mul(&x_pow, w.wp).mul_i64(-s, w.wp));
    let dom = w.series_terms(set.dominant(), m_o, &xr, false)?;

    // ±i e^{∓πia} = sin πa ± i cos πa
    let magnitude = pi(w.wp)
        .ldexp(1)
        .mul(&pow(&xr, &w.real(&params.theta()), w.wp)?, w.wp)
        .mul(&exp(&xr.neg(), w.wp)?, w.wp)
        .mul(&rgamma(&ar, w.wp)?, w.wp)
        .mul(&rgamma(&w.real(&params.a_prime()), w.wp)?, w.wp);
    let pref_sub = BigComplex::new(sa, ca.mul_i64(s, w.wp)).scale(&magnitude, w.wp);

    let first: Vec<BigReal> = w
        .series_terms(set.upper_a(), m, &xr, true)?
        .iter()
        .map(|t| t.ldexp(-1))
        .collect();
    let sqrt_2pi_x = pi(w.wp).mul(&xr, w.wp).ldexp(1).sqrt(w.wp)?;
    let im_factor = sqrt_2pi_x.recip(w.wp)?.mul_i64(-s, w.wp);
    let second: Vec<BigReal> = w
        .series_terms(set.upper_b(), m, &xr, true)?
        .iter()
        .map(|t| t.mul(&im_factor, w.wp))
        .collect();
    let brace = BigComplex::new(w.sum(&first), w.sum(&second));

    let terms_dominant = w.scaled(&dom, &pref_dom);
    let pref_sub_i = pref_sub.mul_i();
    let terms_sub: Vec<BigComplex> = w
        .scaled(&first, &pref_sub)
        .into_iter()
        .chain(w.scaled(&second, &pref_sub_i))
        .collect();
    Ok(ExpansionResult {
        kind: ExpansionKind::UStokes,
        dominant: sum_complex(&terms_dominant, w.wp).round(p),
        subdominant: pref_sub.mul(&brace, w.wp).round(p),
        terms_dominant: w.finish(&terms_dominant),
        terms_sub: w.finish(&terms_sub),
        trunc: Some(set.trunc().clone()),
        m,
        precision: p,
        stokes_multiplier: Some(brace.round(p)),
        warnings: w.m_warnings(m),
    })
}

/// Exponentially improved expansion of `Γ(a)/Γ(b) ₁F₁(a; b; -x)` for
/// non-integer `ϑ = a - b`:
///
/// ```text
/// x^{-a} Γ(a)/Γ(b-a) Σ_{k<m_o} (a)_k (1+a-b)_k / (k! x^k)
///   + x^{a-b} e^{-x} {cos πϑ Σ_{j<M} (-1)^j A_j x^{-j}
///                     - 2 sin πϑ/√(2πx) Σ_{j<M} (-1)^j B_j x^{-j}}
/// ```
pub fn kummer_stokes(
    params: &KummerParams,
    x: &Rational,
    m: usize,
    rule: TruncationRule,
    p: Precision,
) -> Result<ExpansionResult> {
    let w = Work::new(p, m)?;
    require_positive(x)?;
    let theta = params.theta();
    if theta.is_integer() {
        let detail = if theta.is_negative() {
            "the algebraic series has only finitely many terms and cannot be optimally truncated"
        } else {
            "₁F₁ is a polynomial and the algebraic expansion vanishes"
        };
        return Err(Error::degenerate(format!(
            "{params}: a - b = {theta} is an integer; {detail}"
        )));
    }
    if params.a().is_integer() && !params.a().is_positive() {
        return Err(Error::domain(format!("{params}: Γ(a) has a pole")));
    }
    let set = CoefficientSet::kummer(params, x, m, rule, w.wp)?;
    let m_o = set.trunc().m_o() as usize;
    let xr = w.real(x);
    let ar = w.real(params.a());

    let pref_dom = pow(&xr, &ar.neg(), w.wp)?
        .mul(&gamma(&ar, w.wp)?, w.wp)
        .mul(&rgamma(&w.real(&-theta.clone()), w.wp)?, w.wp);
    let dom = w.series_terms(set.dominant(), m_o, &xr, false)?;

    let thr = w.real(&theta);
    let pref_sub = pow(&xr, &thr, w.wp)?.mul(&exp(&xr.neg(), w.wp)?, w.wp);
    let (st, ct) = sin_cos_pi(&thr, w.wp)?;
    let sqrt_2pi_x = pi(w.wp).mul(&xr, w.wp).ldexp(1).sqrt(w.wp)?;
    let c1 = pref_sub.mul(&ct, w.wp);
    let c2 = pref_sub
        .mul(&st, w.wp)
        .ldexp(1)
        .div(&sqrt_2pi_x, w.wp)?
        .neg();
    let first = w.series_terms(set.upper_a(), m, &xr, true)?;
    let second = w.series_terms(set.upper_b(), m, &xr, true)?;

    let terms_dominant: Vec<BigComplex> = dom
        .iter()
        .map(|t| BigComplex::from_real(t.mul(&pref_dom, w.wp)))
        .collect();
    let terms_sub: Vec<BigComplex> = first
        .iter()
        .map(|t| BigComplex::from_real(t.mul(&c1, w.wp)))
        .chain(
            second
                .iter()
                .map(|t| BigComplex::from_real(t.mul(&c2, w.wp))),
        )
        .collect();
    let subdominant = c1
        .mul(&w.sum(&first), w.wp)
        .add(&c2.mul(&w.sum(&second), w.wp), w.wp);
    Ok(ExpansionResult {
        kind: ExpansionKind::KummerStokes,
        dominant: BigComplex::from_real(w.sum(&dom).mul(&pref_dom, w.wp).round(p)),
        subdominant: BigComplex::from_real(subdominant.round(p)),
        terms_dominant: w.finish(&terms_dominant),
        terms_sub: w.finish(&terms_sub),
        trunc: Some(set.trunc().clone()),
        m,
        precision: p,
        stokes_multiplier: None,
        warnings: w.m_warnings(m),
    })
}
