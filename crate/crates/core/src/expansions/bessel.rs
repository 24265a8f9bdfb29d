use super::{require_positive, sum_complex, ExpansionKind, ExpansionResult, StokesSign, Work};
use crate::bigfloat::{cos_pi, exp, pi, sin_cos_pi, BigComplex, BigReal, Precision};
use crate::coeffs::{a_coeffs, BesselOrder, CoefficientSet, TruncationRule};
use crate::error::Result;
use crate::Rational;

/// `e^x`, `e^{-x}`, `√(2πx)` at working precision.
struct Scales {
    x: BigReal,
    e_pos: BigReal,
    e_neg: BigReal,
    sqrt_2pi_x: BigReal,
}

impl Scales {
    fn new(w: &Work, x: &Rational) -> Result<Self> {
        let xr = w.real(x);
        let sqrt_2pi_x = pi(w.wp).mul(&xr, w.wp).ldexp(1).sqrt(w.wp)?;
        Ok(Scales {
            e_pos: exp(&xr, w.wp)?,
            e_neg: exp(&xr.neg(), w.wp)?,
            sqrt_2pi_x,
            x: xr,
        })
    }

    /// `√(π/(2x)) = π/√(2πx)`.
    fn sqrt_pi_over_2x(&self, w: &Work) -> Result<BigReal> {
        pi(w.wp).div(&self.sqrt_2pi_x, w.wp)
    }

    /// `√(πx) = √(2πx)/√2`.
    fn sqrt_pi_x(&self, w: &Work) -> Result<BigReal> {
        self.sqrt_2pi_x.div(&BigReal::from_i64(2).sqrt(w.wp)?, w.wp)
    }
}

fn half_integer_warning(nu: &BesselOrder, what: &str) -> Vec<String> {
    if nu.is_half_integer() {
        vec![format!("half-integer order ν = {nu}: {what}")]
    } else {
        Vec::new()
    }
}

/// Classical compound expansion of `e^{-πνi} I_ν(x e^{πi})`, both series cut
/// at `M` terms:
///
/// `e^x/√(2πx) Σ (-1)^k a_k/x^k - i e^{-x-πνi}/√(2πx) Σ a_k/x^k`.
pub fn i_poincare(
    nu: &BesselOrder,
    x: &Rational,
    m: usize,
    p: Precision,
) -> Result<ExpansionResult> {
    let w = Work::new(p, m)?;
    require_positive(x)?;
    let sc = Scales::new(&w, x)?;
    let a = a_coeffs(nu, m - 1, w.wp);
    let dom = w.series_terms(&a, m, &sc.x, true)?;
    let sub = w.series_terms(&a, m, &sc.x, false)?;
    let pref_dom = BigComplex::from_real(sc.e_pos.div(&sc.sqrt_2pi_x, w.wp)?);
    // -i e^{-πνi} = -sin πν - i cos πν
    let (s, c) = sin_cos_pi(&nu.to_real(w.wp), w.wp)?;
    let r = sc.e_neg.div(&sc.sqrt_2pi_x, w.wp)?;
    let pref_sub = BigComplex::new(s.mul(&r, w.wp).neg(), c.mul(&r, w.wp).neg());
    let terms_dominant = w.scaled(&dom, &pref_dom);
    let terms_sub = w.scaled(&sub, &pref_sub);
    Ok(ExpansionResult {
        kind: ExpansionKind::IPoincare,
        dominant: sum_complex(&terms_dominant, w.wp).round(p),
        subdominant: sum_complex(&terms_sub, w.wp).round(p),
        terms_dominant: w.finish(&terms_dominant),
        terms_sub: w.finish(&terms_sub),
        trunc: None,
        m,
        precision: p,
        stokes_multiplier: None,
        warnings: w.m_warnings(m),
    })
}

/// Exponentially improved expansion of `e^{-πνi} I_ν(x e^{πi})` (equally of
/// `I_ν(x)`), with `ϑ = -ν - 1/2`:
///
/// ```text
/// e^x/√(2πx) Σ_{k<m_o} (-1)^k a_k/x^k
///   + e^{-x}/√(2πx) {cos πϑ Σ_{k<M} a_k/x^k - sin πϑ/√(πx) Σ_{j<M} (-1)^j B_j/(2x)^j}
/// ```
///
/// The subdominant part is real by construction.
pub fn i_stokes(
    nu: &BesselOrder,
    x: &Rational,
    m: usize,
    rule: TruncationRule,
    p: Precision,
) -> Result<ExpansionResult> {
    let w = Work::new(p, m)?;
    require_positive(x)?;
    let set = CoefficientSet::bessel(nu, x, m, rule, w.wp)?;
    let sc = Scales::new(&w, x)?;
    let m_o = set.trunc().m_o() as usize;

    let dom = w.series_terms(set.dominant(), m_o, &sc.x, true)?;
    let pref_dom = sc.e_pos.div(&sc.sqrt_2pi_x, w.wp)?;

    let (s, c) = sin_cos_pi(&w.real(&nu.theta()), w.wp)?;
    let pref_sub = sc.e_neg.div(&sc.sqrt_2pi_x, w.wp)?;
    let c1 = pref_sub.mul(&c, w.wp);
    let c2 = pref_sub.mul(&s, w.wp).div(&sc.sqrt_pi_x(&w)?, w.wp)?.neg();
    let first = w.series_terms(set.dominant(), m, &sc.x, false)?;
    let second = w.series_terms(set.upper_b(), m, &sc.x.ldexp(1), true)?;

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

    let mut warnings = w.m_warnings(m);
    warnings.extend(half_integer_warning(
        nu,
        "sin πϑ = 0, the second exponentially small series vanishes",
    ));
    Ok(ExpansionResult {
        kind: ExpansionKind::IStokes,
        dominant: BigComplex::from_real(w.sum(&dom).mul(&pref_dom, w.wp).round(p)),
        subdominant: BigComplex::from_real(subdominant.round(p)),
        terms_dominant: w.finish(&terms_dominant),
        terms_sub: w.finish(&terms_sub),
        trunc: Some(set.trunc().clone()),
        m,
        precision: p,
        stokes_multiplier: None,
        warnings,
    })
}

/// Classical compound expansion of `K_ν(x e^{πi})` with the full Stokes
/// multiplier `2 cos πν` on the subdominant series; both series cut at `M`.
pub fn k_naive_stokes(
    nu: &BesselOrder,
    x: &Rational,
    m: usize,
    p: Precision,
) -> Result<ExpansionResult> {
    let w = Work::new(p, m)?;
    require_positive(x)?;
    let sc = Scales::new(&w, x)?;
    let a = a_coeffs(nu, m - 1, w.wp);
    let root = sc.sqrt_pi_over_2x(&w)?;
    let dom = w.series_terms(&a, m, &sc.x, true)?;
    let sub = w.series_terms(&a, m, &sc.x, false)?;
    let pref_dom = BigComplex::new(BigReal::zero(), root.mul(&sc.e_pos, w.wp).neg());
    let cnu = cos_pi(&nu.to_real(w.wp), w.wp)?;
    let pref_sub = BigComplex::from_real(cnu.ldexp(1).mul(&root, w.wp).mul(&sc.e_neg, w.wp));
    let terms_dominant = w.scaled(&dom, &pref_dom);
    let terms_sub = w.scaled(&sub, &pref_sub);
    let mut warnings = w.m_warnings(m);
    warnings.extend(half_integer_warning(
        nu,
        "cos πν = 0, the subdominant series vanishes",
    ));
    Ok(ExpansionResult {
        kind: ExpansionKind::KNaive,
        dominant: sum_complex(&terms_dominant, w.wp).round(p),
        subdominant: sum_complex(&terms_sub, w.wp).round(p),
        terms_dominant: w.finish(&terms_dominant),
        terms_sub: w.finish(&terms_sub),
        trunc: None,
        m,
        precision: p,
        stokes_multiplier: None,
        warnings,
    })
}

/// Exponentially improved expansion of `K_ν(x e^{±πi})`:
///
/// ```text
/// ∓i √(π/2x) e^x Σ_{k<m_o} (-1)^k a_k/x^k
///   + 2 cos πν √(π/2x) e^{-x} {½ Σ_{k<M} a_k/x^k ∓ i/(2√(πx)) Σ_{j<M} (-1)^j B_j/(2x)^j}
/// ```
///
/// The brace is returned as the Stokes multiplier.
pub fn k_stokes(
    nu: &BesselOrder,
    x: &Rational,
    m: usize,
    sign: StokesSign,
    rule: TruncationRule,
    p: Precision,
) -> Result<ExpansionResult> {
    let w = Work::new(p, m)?;
    require_positive(x)?;
    let set = CoefficientSet::bessel(nu, x, m, rule, w.wp)?;
    let sc = Scales::new(&w, x)?;
    let m_o = set.trunc().m_o() as usize;
    let s = sign.as_i64();
    let root = sc.sqrt_pi_over_2x(&w)?;

    let dom = w.series_terms(set.dominant(), m_o, &sc.x, true)?;
    let pref_dom = root.mul(&sc.e_pos, w.wp).mul_i64(-s, w.wp);

    let first: Vec<BigReal> = w
        .series_terms(set.dominant(), m, &sc.x, false)?
        .iter()
        .map(|t| t.ldexp(-1))
        .collect();
    let im_factor = sc.sqrt_pi_x(&w)?.ldexp(1).recip(w.wp)?.mul_i64(-s, w.wp);
    let second: Vec<BigReal> = w
        .series_terms(set.upper_b(), m, &sc.x.ldexp(1), true)?
        .iter()
        .map(|t| t.mul(&im_factor, w.wp))
        .collect();
    let brace = BigComplex::new(w.sum(&first), w.sum(&second));

    let cnu = cos_pi(&nu.to_real(w.wp), w.wp)?;
    let pref_sub = cnu.ldexp(1).mul(&root, w.wp).mul(&sc.e_neg, w.wp);

    let terms_dominant: Vec<BigComplex> = dom
        .iter()
        .map(|t| BigComplex::new(BigReal::zero(), t.mul(&pref_dom, w.wp)))
        .collect();
    let terms_sub: Vec<BigComplex> = first
        .iter()
        .map(|t| BigComplex::from_real(t.mul(&pref_sub, w.wp)))
        .chain(
            second
                .iter()
                .map(|t| BigComplex::new(BigReal::zero(), t.mul(&pref_sub, w.wp))),
        )
        .collect();

    let mut warnings = w.m_warnings(m);
    warnings.extend(half_integer_warning(
        nu,
        "cos πν = 0, the subdominant part vanishes",
    ));
    Ok(ExpansionResult {
        kind: ExpansionKind::KStokes,
        dominant: BigComplex::new(BigReal::zero(), w.sum(&dom).mul(&pref_dom, w.wp).round(p)),
        subdominant: brace.scale(&pref_sub, w.wp).round(p),
        terms_dominant: w.finish(&terms_dominant),
        terms_sub: w.finish(&terms_sub),
        trunc: Some(set.trunc().clone()),
        m,
        precision: p,
        stokes_multiplier: Some(brace.round(p)),
        warnings,
    })
}
