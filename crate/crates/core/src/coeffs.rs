//! Coefficient sequences of the Stokes-line expansions and the optimal
//! truncation bookkeeping.
//!
//! Parameters are exact rationals, so every coefficient is first computed
//! exactly and then rounded once. This makes identities such as
//! `a_k(ν) = a_k(-ν)` and the zeros at half-integer `ν` hold bit for bit.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bigfloat::{parse_rational, BigReal, Precision};
use crate::error::{Error, Result};
use crate::exactpoly::{g_family, Rational};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

/// Order `ν` of a modified Bessel function.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BesselOrder {
    nu: Rational,
}

impl BesselOrder {
    pub fn new(nu: Rational) -> Self {
        BesselOrder { nu }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::new(parse_rational(s)?))
    }

    pub fn nu(&self) -> &Rational {
        &self.nu
    }

    pub fn to_real(&self, p: Precision) -> BigReal {
        BigReal::from_ratio(&self.nu, p)
    }

    pub fn is_integer(&self) -> bool {
        self.nu.is_integer()
    }

    /// `2ν` is an odd integer.
    pub fn is_half_integer(&self) -> bool {
        let two_nu = &self.nu * int(2);
        two_nu.is_integer() && two_nu.to_integer().is_odd()
    }

    /// Half-integer orders: `I_ν` is elementary and the second
    /// exponentially small series drops out.
    pub fn is_special(&self) -> bool {
        self.is_half_integer()
    }

    /// `ϑ = -ν - 1/2`.
    pub fn theta(&self) -> Rational {
        -&self.nu - q(1, 2)
    }

    /// Kummer parameters `a = ν + 1/2`, `b = 2ν + 1` of the `U` and `₁F₁`
    /// representations.
    pub fn kummer_params(&self) -> KummerParams {
        KummerParams::new(&self.nu + q(1, 2), &self.nu * int(2) + Rational::one())
    }
}

impl fmt::Display for BesselOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.nu)
    }
}

/// Parameters `(a, b)` of the Kummer functions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KummerParams {
    a: Rational,
    b: Rational,
}

impl KummerParams {
    pub fn new(a: Rational, b: Rational) -> Self {
        KummerParams { a, b }
    }

    pub fn parse(a: &str, b: &str) -> Result<Self> {
        Ok(Self::new(parse_rational(a)?, parse_rational(b)?))
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `ϑ = a - b`.
    pub fn theta(&self) -> Rational {
        &self.a - &self.b
    }

    pub fn two_a_minus_b(&self) -> Rational {
        &self.a * int(2) - &self.b
    }

    /// `1 + a - b`.
    pub fn a_prime(&self) -> Rational {
        Rational::one() + &self.a - &self.b
    }

    /// `1/Γ(a)` or `1/Γ(1+a-b)` vanishes, so the exponentially small part of
    /// `U` on the Stokes lines is identically zero.
    pub fn u_exponential_part_vanishes(&self) -> bool {
        is_nonpositive_integer(&self.a) || is_nonpositive_integer(&self.a_prime())
    }
}

impl fmt::Display for KummerParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a={}, b={}", self.a, self.b)
    }
}

/// How the optimal truncation index is rounded to an integer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TruncationRule {
    /// Nearest integer, ties to even: `|α| <= 1/2`.
    #[default]
    Nearest,
    /// Largest integer not above the optimum: `-1 < α <= 0`.
    Floor,
}

impl TruncationRule {
    pub fn name(self) -> &'static str {
        match self {
            TruncationRule::Nearest => "nearest",
            TruncationRule::Floor => "floor",
        }
    }
}

impl fmt::Display for TruncationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TruncationRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nearest" => Ok(TruncationRule::Nearest),
            "floor" => Ok(TruncationRule::Floor),
            _ => Err(Error::parse(s, "expected `nearest` or `floor`")),
        }
    }
}

/// Optimal truncation index `m_o = x_scale - (2a - b) + α`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncationInfo {
    m_o: u64,
    alpha: Rational,
    x_scale: Rational,
    rule: TruncationRule,
}

impl TruncationInfo {
    pub fn m_o(&self) -> u64 {
        self.m_o
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn x_scale(&self) -> &Rational {
        &self.x_scale
    }

    pub fn rule(&self) -> TruncationRule {
        self.rule
    }
}

/// Truncation index for an algebraic series in `1/x_scale` whose optimum
/// sits at `x_scale - (2a - b)`.
pub fn optimal_truncation(
    x_scale: &Rational,
    two_a_minus_b: &Rational,
    rule: TruncationRule,
) -> Result<TruncationInfo> {
    if !x_scale.is_positive() {
        return Err(Error::domain(format!(
            "argument must be positive, got {x_scale}"
        )));
    }
    let target = x_scale - two_a_minus_b;
    let m = match rule {
        TruncationRule::Floor => target.floor().to_integer(),
        TruncationRule::Nearest => {
            let fl = target.floor().to_integer();
            let frac = &target - Rational::from_integer(fl.clone());
            match frac.cmp(&q(1, 2)) {
                std::cmp::Ordering::Less => fl,
                std::cmp::Ordering::Greater => fl + 1,
                std::cmp::Ordering::Equal if fl.is_even() => fl,
                std::cmp::Ordering::Equal => fl + 1,
            }
        }
    };
    if m < BigInt::one() {
        return Err(Error::domain(format!(
            "optimal truncation index is {m} for argument {x_scale}; \
             the argument is too small for optimal truncation to mean anything"
        )));
    }
    let m_o = m
        .to_u64()
        .filter(|&m| m <= 1 << 24)
        .ok_or_else(|| Error::domain(format!("argument {x_scale} is too large")))?;
    let alpha = Rational::from_integer(m) - target;
    Ok(TruncationInfo {
        m_o,
        alpha,
        x_scale: x_scale.clone(),
        rule,
    })
}

/// `γ_j = α - j` for `j = 0..m`.
pub fn gamma_offsets(trunc: &TruncationInfo, m: usize) -> Vec<Rational> {
    (0..m).map(|j| &trunc.alpha - int(j)).collect()
}

/// `a_0(ν), ..., a_kmax(ν)` exactly.
///
/// `a_k = -a_{k-1}·((k - 1/2)² - ν²)/(2k)`; `ν` enters only through `ν²`.
pub fn a_coeffs_exact(nu: &BesselOrder, kmax: usize) -> Vec<Rational> {
    let nu2 = &nu.nu * &nu.nu;
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(Rational::one());
    for k in 1..=kmax {
        let h = int(k) - q(1, 2);
        let factor = (&h * &h - &nu2) / int(2 * k);
        let next = -(&out[k - 1] * factor);
        out.push(next);
    }
    out
}

pub fn a_coeffs(nu: &BesselOrder, kmax: usize, p: Precision) -> Vec<BigReal> {
    round_all(&a_coeffs_exact(nu, kmax), p)
}

/// `A_j = (1-a)_j (b-a)_j / j!` exactly.
pub fn upper_a_coeffs_exact(params: &KummerParams, jmax: usize) -> Vec<Rational> {
    let b_minus_a = &params.b - &params.a;
    let mut out = Vec::with_capacity(jmax + 1);
    out.push(Rational::one());
    for j in 1..=jmax {
        let f = (int(j) - &params.a) * (int(j - 1) + &b_minus_a) / int(j);
        let next = &out[j - 1] * f;
        out.push(next);
    }
    out
}

pub fn upper_a_coeffs(params: &KummerParams, jmax: usize, p: Precision) -> Vec<BigReal> {
    round_all(&upper_a_coeffs_exact(params, jmax), p)
}

/// `(a)_k (1+a-b)_k / k!`, the coefficients of the algebraic series of `U`.
pub fn algebraic_coeffs_exact(params: &KummerParams, kmax: usize) -> Vec<Rational> {
    let a_prime = params.a_prime();
    let mut out = Vec::with_capacity(kmax + 1);
    out.push(Rational::one());
    for k in 1..=kmax {
        let f = (&params.a + int(k - 1)) * (&a_prime + int(k - 1)) / int(k);
        let next = &out[k - 1] * f;
        out.push(next);
    }
    out
}

fn half_pochhammer_signed(k: usize) -> Rational {
    // (-2)^k (1/2)_k = (-1)^k (2k-1)!!
    let mut v = Rational::one();
    for i in 0..k {
        v *= -int(2 * i + 1);
    }
    v
}

/// `B_0..B_{m-1}` at the exact `α` of `trunc`.
pub fn upper_b_coeffs_exact(
    params: &KummerParams,
    trunc: &TruncationInfo,
    m: usize,
) -> Result<Vec<Rational>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    let gs = g_family(2 * (m - 1))?;
    let a = upper_a_coeffs_exact(params, m - 1);
    let gammas = gamma_offsets(trunc, m);
    let weights: Vec<Rational> = (0..m).map(half_pochhammer_signed).collect();
    Ok((0..m)
        .map(|j| {
            (0..=j).fold(Rational::zero(), |acc, k| {
                let g = gs[2 * k].eval_exact(&gammas[j - k]);
                acc + &weights[k] * &a[j - k] * g
            })
        })
        .collect())
}

/// `B_0..B_{m-1}` evaluated numerically at an arbitrary real `α`.
pub fn upper_b_coeffs(
    params: &KummerParams,
    alpha: &BigReal,
    m: usize,
    p: Precision,
) -> Result<Vec<BigReal>> {
    if m == 0 {
        return Ok(Vec::new());
    }
    let wp = p.with_guard(32 + 4 * m as u32);
    let gs = g_family(2 * (m - 1))?;
    let a = upper_a_coeffs(params, m - 1, wp);
    let weights: Vec<BigReal> = (0..m)
        .map(|k| BigReal::from_ratio(&half_pochhammer_signed(k), wp))
        .collect();
    Ok((0..m)
        .map(|j| {
            (0..=j)
                .fold(BigReal::zero(), |acc, k| {
                    let gamma = alpha.sub(&BigReal::from_i64((j - k) as i64), wp);
                    let g = gs[2 * k].eval(&gamma, wp);
                    acc.add(&weights[k].mul(&a[j - k], wp).mul(&g, wp), wp)
                })
                .round(p)
        })
        .collect())
}

fn round_all(v: &[Rational], p: Precision) -> Vec<BigReal> {
    v.iter().map(|r| BigReal::from_ratio(r, p)).collect()
}

/// Every coefficient one Stokes-line expansion needs, bound to the
/// truncation it was built for: `B_j` depend on `α` and hence on `x`.
#[derive(Clone, Debug)]
pub struct CoefficientSet {
    dominant: Vec<BigReal>,
    upper_a: Vec<BigReal>,
    upper_b: Vec<BigReal>,
    trunc: TruncationInfo,
    m: usize,
}

impl CoefficientSet {
    /// Coefficients for `I_ν`, `K_ν` at argument `x`: the dominant series
    /// holds `a_k(ν)` for `k < max(m_o, M)`.
    pub fn bessel(
        nu: &BesselOrder,
        x: &Rational,
        m: usize,
        rule: TruncationRule,
        p: Precision,
    ) -> Result<Self> {
        let trunc = optimal_truncation(&(x * int(2)), &Rational::zero(), rule)?;
        let len = (trunc.m_o as usize).max(m);
        let params = nu.kummer_params();
        Self::assemble(a_coeffs_exact(nu, len - 1), &params, trunc, m, p)
    }

    /// Coefficients for `U(a, b, x e^{±πi})` and `₁F₁(a; b; -x)`: the dominant
    /// series holds `(a)_k (1+a-b)_k / k!`.
    pub fn kummer(
        params: &KummerParams,
        x: &Rational,
        m: usize,
        rule: TruncationRule,
        p: Precision,
    ) -> Result<Self> {
        let trunc = optimal_truncation(x, &params.two_a_minus_b(), rule)?;
        let len = (trunc.m_o as usize).max(m);
        Self::assemble(algebraic_coeffs_exact(params, len - 1), params, trunc, m, p)
    }

    fn assemble(
        dominant: Vec<Rational>,
        params: &KummerParams,
        trunc: TruncationInfo,
        m: usize,
        p: Precision,
    ) -> Result<Self> {
        if m == 0 {
            return Err(Error::Usage("M must be a positive integer".into()));
        }
        let upper_b = upper_b_coeffs_exact(params, &trunc, m)?;
        Ok(CoefficientSet {
            dominant: round_all(&dominant, p),
            upper_a: upper_a_coeffs(params, m - 1, p),
            upper_b: round_all(&upper_b, p),
            trunc,
            m,
        })
    }

    pub fn dominant(&self) -> &[BigReal] {
        &self.dominant
    }

    pub fn upper_a(&self) -> &[BigReal] {
        &self.upper_a
    }

    pub fn upper_b(&self) -> &[BigReal] {
        &self.upper_b
    }

    pub fn trunc(&self) -> &TruncationInfo {
        &self.trunc
    }

    pub fn m(&self) -> usize {
        self.m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(n: i64, d: i64) -> BesselOrder {
        BesselOrder::new(q(n, d))
    }

    #[test]
    fn a_coefficients() {
        let a = a_coeffs_exact(&order(1, 4), 3);
        assert_eq!(a[0], q(1, 1));
        assert_eq!(a[1], q(-3, 32));
        assert!(a_coeffs_exact(&order(1, 2), 6)[1..]
            .iter()
            .all(Zero::is_zero));
        assert_eq!(
            a_coeffs_exact(&order(3, 7), 9),
            a_coeffs_exact(&order(-3, 7), 9)
        );
        let c = a_coeffs_exact(&order(5, 2), 5);
        assert!(!c[2].is_zero());
        assert!(c[3..].iter().all(Zero::is_zero));
    }

    #[test]
    fn upper_a_matches_bessel_coefficients() {
        let nu = order(1, 4);
        let params = nu.kummer_params();
        assert_eq!(params.a(), &q(3, 4));
        assert_eq!(params.b(), &q(3, 2));
        let big = upper_a_coeffs_exact(&params, 12);
        let small = a_coeffs_exact(&nu, 12);
        assert_eq!(big[1], q(3, 16));
        for j in 0..=12 {
            let scale = Rational::new(BigInt::one(), BigInt::from(-2).pow(j as u32));
            assert_eq!(&big[j] * scale, small[j], "j = {j}");
        }
    }

    #[test]
    fn truncation_rules() {
        let zero = Rational::zero();
        let t = optimal_truncation(&q(20, 1), &zero, TruncationRule::Nearest).unwrap();
        assert_eq!((t.m_o(), t.alpha().clone()), (20, zero.clone()));
        let t = optimal_truncation(&q(154, 5), &zero, TruncationRule::Nearest).unwrap();
        assert_eq!((t.m_o(), t.alpha().clone()), (31, q(1, 5)));
        let t = optimal_truncation(&q(154, 5), &zero, TruncationRule::Floor).unwrap();
        assert_eq!((t.m_o(), t.alpha().clone()), (30, q(-4, 5)));
        let t = optimal_truncation(&q(41, 2), &zero, TruncationRule::Nearest).unwrap();
        assert_eq!((t.m_o(), t.alpha().clone()), (20, q(-1, 2)));
        let t = optimal_truncation(&q(43, 2), &zero, TruncationRule::Nearest).unwrap();
        assert_eq!((t.m_o(), t.alpha().clone()), (22, q(1, 2)));
        assert!(optimal_truncation(&q(1, 3), &zero, TruncationRule::Nearest).is_err());
        assert!(optimal_truncation(&q(-5, 1), &zero, TruncationRule::Floor).is_err());
        assert_eq!(
            "floor".parse::<TruncationRule>().unwrap(),
            TruncationRule::Floor
        );
        assert!("up".parse::<TruncationRule>().is_err());
    }

    #[test]
    fn gamma_offsets_examples() {
        let zero = Rational::zero();
        let t = optimal_truncation(&q(20, 1), &zero, TruncationRule::Nearest).unwrap();
        assert_eq!(gamma_offsets(&t, 3), vec![q(0, 1), q(-1, 1), q(-2, 1)]);
        let t = optimal_truncation(&q(154, 5), &zero, TruncationRule::Nearest).unwrap();
        assert_eq!(gamma_offsets(&t, 2), vec![q(1, 5), q(-4, 5)]);
        let t = optimal_truncation(&q(41, 2), &zero, TruncationRule::Nearest).unwrap();
        assert_eq!(gamma_offsets(&t, 1), vec![q(-1, 2)]);
    }

    #[test]
    fn b_coefficients() {
        let params = order(1, 4).kummer_params();
        let zero = Rational::zero();
        let t = optimal_truncation(&q(20, 1), &zero, TruncationRule::Nearest).unwrap();
        let b = upper_b_coeffs_exact(&params, &t, 2).unwrap();
        assert_eq!(b[0], q(2, 3));
        assert_eq!(b[1], q(491, 2160));
        let t = optimal_truncation(&q(154, 5), &zero, TruncationRule::Nearest).unwrap();
        assert_eq!(upper_b_coeffs_exact(&params, &t, 1).unwrap()[0], q(7, 15));
    }

    #[test]
    fn numeric_b_agrees_with_exact() {
        let p = Precision::new(200).unwrap();
        let params = order(1, 4).kummer_params();
        let t = optimal_truncation(&q(154, 5), &Rational::zero(), TruncationRule::Floor).unwrap();
        let exact = upper_b_coeffs_exact(&params, &t, 7).unwrap();
        let alpha = BigReal::from_ratio(t.alpha(), p.with_guard(64));
        let numeric = upper_b_coeffs(&params, &alpha, 7, p).unwrap();
        for (n, e) in numeric.iter().zip(&exact) {
            let e = BigReal::from_ratio(e, p);
            assert!(crate::bigfloat::ulp_distance(n, &e, &e, p) <= 16.0);
        }
    }

    #[test]
    fn order_flags() {
        assert!(order(1, 2).is_half_integer());
        assert!(order(-3, 2).is_special());
        assert!(!order(1, 4).is_half_integer());
        assert!(!order(2, 1).is_half_integer());
        assert!(order(2, 1).is_integer());
        assert_eq!(order(1, 4).theta(), q(-3, 4));
        let p = KummerParams::new(q(1, 2), q(3, 2));
        assert!(p.u_exponential_part_vanishes());
        assert!(!KummerParams::new(q(1, 2), q(1, 1)).u_exponential_part_vanishes());
    }

    #[test]
    fn coefficient_set_lengths() {
        let p = Precision::new(128).unwrap();
        let set =
            CoefficientSet::bessel(&order(1, 4), &q(10, 1), 7, TruncationRule::Nearest, p).unwrap();
        assert_eq!(set.trunc().m_o(), 20);
        assert_eq!(set.dominant().len(), 20);
        assert_eq!(set.upper_a().len(), 7);
        assert_eq!(set.upper_b().len(), 7);
        let set =
            CoefficientSet::bessel(&order(1, 4), &q(2, 1), 7, TruncationRule::Nearest, p).unwrap();
        assert_eq!(set.dominant().len(), 7);
        assert!(
            CoefficientSet::bessel(&order(1, 4), &q(10, 1), 0, TruncationRule::Nearest, p).is_err()
        );
    }
}
