//! Exponentially improved expansions on the Stokes lines, and the classical
//! compound expansions they correct.
//!
//! Every function splits its value into a dominant part (the optimally
//! truncated algebraic or exponentially large series with its prefactor) and
//! a subdominant, exponentially small part, and keeps the individual terms.
//! Internally everything runs at the requested precision plus
//! [`EXPANSION_GUARD`] bits and is rounded once.

mod bessel;
mod kummer;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bigfloat::{decimal::round_trip_digits, format_sci, BigComplex, BigReal, Precision};
use crate::coeffs::TruncationInfo;
use crate::error::{Error, Result};

pub use bessel::{i_poincare, i_stokes, k_naive_stokes, k_stokes};
pub use kummer::{kummer_stokes, u_stokes};

/// Extra working bits carried through every expansion.
pub const EXPANSION_GUARD: u32 = 64;

/// Largest `M` covered by the coefficient cross-checks in the test suite;
/// larger `M` works but is reported in the warnings.
pub const VALIDATED_MAX_M: usize = 8;

/// Which side of the negative real axis: `arg z = +π` or `-π`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum StokesSign {
    #[default]
    Plus,
    Minus,
}

impl StokesSign {
    pub fn as_i64(self) -> i64 {
        match self {
            StokesSign::Plus => 1,
            StokesSign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            StokesSign::Plus => StokesSign::Minus,
            StokesSign::Minus => StokesSign::Plus,
        }
    }
}

impl fmt::Display for StokesSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StokesSign::Plus => "+",
            StokesSign::Minus => "-",
        })
    }
}

impl FromStr for StokesSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "+1" | "1" => Ok(StokesSign::Plus),
            "-" | "minus" | "-1" => Ok(StokesSign::Minus),
            _ => Err(Error::parse(s, "expected `+` or `-`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionKind {
    /// Classical compound expansion of `e^{-πνi} I_ν(x e^{πi})`.
    IPoincare,
    /// Exponentially improved expansion of `e^{-πνi} I_ν(x e^{πi})`.
    IStokes,
    /// Classical compound expansion of `K_ν(x e^{πi})`.
    KNaive,
    /// Exponentially improved expansion of `K_ν(x e^{±πi})`.
    KStokes,
    /// Exponentially improved expansion of `U(a, b, x e^{±πi})`.
    UStokes,
    /// Exponentially improved expansion of `Γ(a)/Γ(b) ₁F₁(a; b; -x)`.
    KummerStokes,
}

impl ExpansionKind {
    pub fn name(self) -> &'static str {
        match self {
            ExpansionKind::IPoincare => "i_poincare",
            ExpansionKind::IStokes => "i_stokes",
            ExpansionKind::KNaive => "k_naive",
            ExpansionKind::KStokes => "k_stokes",
            ExpansionKind::UStokes => "u_stokes",
            ExpansionKind::KummerStokes => "kummer_stokes",
        }
    }
}

impl fmt::Display for ExpansionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Value of one expansion, with its term-by-term breakdown.
///
/// `terms_sub` holds the first sub-series followed by the second, so it has
/// `2M` entries (the classical expansions have a single sub-series of `M`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpansionResult {
    pub kind: ExpansionKind,
    pub dominant: BigComplex,
    pub subdominant: BigComplex,
    pub terms_dominant: Vec<BigComplex>,
    pub terms_sub: Vec<BigComplex>,
    /// `None` for the classical expansions, which are not optimally truncated.
    pub trunc: Option<TruncationInfo>,
    pub m: usize,
    pub precision: Precision,
    /// The brace of the `K_ν` and `U` expansions.
    pub stokes_multiplier: Option<BigComplex>,
    pub warnings: Vec<String>,
}

impl ExpansionResult {
    pub fn total(&self) -> BigComplex {
        self.dominant.add(&self.subdominant, self.precision)
    }

    pub fn to_json(&self) -> ExpansionJson {
        self.to_json_digits(round_trip_digits(self.precision))
    }

    /// JSON view with every number printed to `digits` significant digits.
    pub fn to_json_digits(&self, digits: usize) -> ExpansionJson {
        let c = |z: &BigComplex| ComplexJson::new(z, digits);
        ExpansionJson {
            kind: self.kind,
            precision_bits: self.precision.bits(),
            m: self.m,
            truncation: self.trunc.as_ref().map(|t| TruncationJson {
                m_o: t.m_o(),
                alpha: t.alpha().to_string(),
                x_scale: t.x_scale().to_string(),
                rule: t.rule().name().to_owned(),
            }),
            dominant: c(&self.dominant),
            subdominant: c(&self.subdominant),
            total: c(&self.total()),
            stokes_multiplier: self.stokes_multiplier.as_ref().map(c),
            terms_dominant: self.terms_dominant.iter().map(c).collect(),
            terms_sub: self.terms_sub.iter().map(c).collect(),
            warnings: self.warnings.clone(),
        }
    }
}

/// The brace `{½ Σ ... ∓ i/(2√(πx)) Σ ...}` of a `K_ν` or `U` expansion:
/// the effective Stokes multiplier, `½` to leading order.
pub fn stokes_multiplier(result: &ExpansionResult) -> Result<BigComplex> {
    result.stokes_multiplier.clone().ok_or_else(|| {
        Error::Usage(format!(
            "{} results carry no Stokes multiplier; use k_stokes or u_stokes",
            result.kind
        ))
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub re: String,
    pub im: String,
}

impl ComplexJson {
    fn new(z: &BigComplex, digits: usize) -> Self {
        ComplexJson {
            re: format_sci(&z.re, digits),
            im: format_sci(&z.im, digits),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationJson {
    pub m_o: u64,
    pub alpha: String,
    pub x_scale: String,
    pub rule: String,
}

/// Serialisable form of [`ExpansionResult`]; numbers are decimal strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionJson {
    pub kind: ExpansionKind,
    pub precision_bits: u32,
    pub m: usize,
    pub truncation: Option<TruncationJson>,
    pub dominant: ComplexJson,
    pub subdominant: ComplexJson,
    pub total: ComplexJson,
    pub stokes_multiplier: Option<ComplexJson>,
    pub terms_dominant: Vec<ComplexJson>,
    pub terms_sub: Vec<ComplexJson>,
    pub warnings: Vec<String>,
}

/// Shared plumbing for the expansion bodies.
struct Work {
    p: Precision,
    wp: Precision,
}

impl Work {
    fn new(p: Precision, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Usage("M must be a positive integer".into()));
        }
        Ok(Work {
            p,
            wp: p.with_guard(EXPANSION_GUARD),
        })
    }

    fn real(&self, r: &crate::Rational) -> BigReal {
        BigReal::from_ratio(r, self.wp)
    }

    /// `c_k · (sign/x)^k` for `k < n`.
    fn series_terms(
        &self,
        c: &[BigReal],
        n: usize,
        x: &BigReal,
        alternate: bool,
    ) -> Result<Vec<BigReal>> {
        let mut step = x.recip(self.wp)?;
        if alternate {
            step = step.neg();
        }
        let mut power = BigReal::one();
        let mut out = Vec::with_capacity(n);
        for ck in &c[..n] {
            out.push(ck.mul(&power, self.wp));
            power = power.mul(&step, self.wp);
        }
        Ok(out)
    }

    fn sum(&self, terms: &[BigReal]) -> BigReal {
        terms
            .iter()
            .fold(BigReal::zero(), |acc, t| acc.add(t, self.wp))
    }

    /// Multiply real terms by a complex prefactor.
    fn scaled(&self, terms: &[BigReal], pref: &BigComplex) -> Vec<BigComplex> {
        terms.iter().map(|t| pref.scale(t, self.wp)).collect()
    }

    fn finish(&self, z: &[BigComplex]) -> Vec<BigComplex> {
        z.iter().map(|t| t.round(self.p)).collect()
    }

    fn m_warnings(&self, m: usize) -> Vec<String> {
        if m > VALIDATED_MAX_M {
            vec![format!(
                "M = {m} uses coefficient polynomials beyond g_{}, outside the validated range",
                2 * (VALIDATED_MAX_M - 1)
            )]
        } else {
            Vec::new()
        }
    }
}

fn sum_complex(terms: &[BigComplex], p: Precision) -> BigComplex {
    terms
        .iter()
        .fold(BigComplex::zero(), |acc, t| acc.add(t, p))
}

fn require_positive(x: &crate::Rational) -> Result<()> {
    use num_traits::Signed;
    if x.is_positive() {
        Ok(())
    } else {
        Err(Error::domain(format!("x must be positive, got {x}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigfloat::parse_rational;
    use crate::bigfloat::{format_paper, format_paper_complex};
    use crate::coeffs::{BesselOrder, KummerParams, TruncationRule};
    use crate::exactpoly::Rational;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn p() -> Precision {
        Precision::new(128).unwrap()
    }

    #[test]
    fn i_stokes_table_corners() {
        let nu = BesselOrder::parse("0.25").unwrap();
        let v = i_stokes(&nu, &r("10"), 1, TruncationRule::Nearest, p()).unwrap();
        assert_eq!(format_paper(&v.subdominant.re, 10), "-3.568247262(-06)");
        assert!(v.subdominant.im.is_zero());
        assert_eq!(v.terms_sub.len(), 2);
        assert_eq!(v.terms_dominant.len(), 20);
        let v = i_stokes(&nu, &r("20"), 7, TruncationRule::Nearest, p()).unwrap();
        assert_eq!(format_paper(&v.subdominant.re, 10), "-1.185757399(-10)");
    }

    #[test]
    fn k_stokes_table_corners() {
        let nu = BesselOrder::parse("0.25").unwrap();
        let v = k_stokes(
            &nu,
            &r("25"),
            1,
            StokesSign::Plus,
            TruncationRule::Nearest,
            p(),
        )
        .unwrap();
        assert_eq!(
            format_paper_complex(&v.subdominant, 10),
            "2.461573958(-12) - 1.851725849i(-13)"
        );
        let brace = stokes_multiplier(&v).unwrap();
        assert_eq!(brace.re, BigReal::from_parts(1.into(), -1));
        let v = k_stokes(
            &nu,
            &r("25"),
            7,
            StokesSign::Plus,
            TruncationRule::Nearest,
            p(),
        )
        .unwrap();
        assert_eq!(
            format_paper_complex(&v.subdominant, 10),
            "2.452537123(-12) - 1.839452297i(-13)"
        );
        let minus = k_stokes(
            &nu,
            &r("25"),
            7,
            StokesSign::Minus,
            TruncationRule::Nearest,
            p(),
        )
        .unwrap();
        assert_eq!(minus.subdominant, v.subdominant.conj());
        assert_eq!(minus.dominant, v.dominant.conj());
    }

    #[test]
    fn classical_expansions() {
        let nu = BesselOrder::parse("0.25").unwrap();
        let v = i_poincare(&nu, &r("10"), 1, p()).unwrap();
        assert!(!v.subdominant.im.is_zero());
        assert!(v.trunc.is_none());
        let half = BesselOrder::parse("1/2").unwrap();
        let k = k_naive_stokes(&half, &r("10"), 3, p()).unwrap();
        assert!(k.subdominant.re.is_zero() && k.subdominant.im.is_zero());
        assert_eq!(k.warnings.len(), 1);
        assert!(stokes_multiplier(&k).is_err());
    }

    #[test]
    fn half_integer_order_degenerates() {
        let half = BesselOrder::parse("0.5").unwrap();
        let v = i_stokes(&half, &r("10"), 3, TruncationRule::Nearest, p()).unwrap();
        assert!(v.terms_sub[3..].iter().all(|t| t.re.is_zero()));
        assert!(!v.warnings.is_empty());
        // ϑ = -1: S_I(1; x) = -e^{-x}/√(2πx)
        let one = i_stokes(&half, &r("10"), 1, TruncationRule::Nearest, p()).unwrap();
        assert!(one.subdominant.re.is_negative());
    }

    #[test]
    fn kummer_preconditions() {
        let deg = KummerParams::parse("0.5", "1.5").unwrap();
        assert!(matches!(
            u_stokes(
                &deg,
                &r("10"),
                2,
                StokesSign::Plus,
                TruncationRule::Nearest,
                p()
            ),
            Err(Error::Degenerate(_))
        ));
        let int_theta = KummerParams::parse("1.5", "0.5").unwrap();
        assert!(matches!(
            kummer_stokes(&int_theta, &r("10"), 2, TruncationRule::Nearest, p()),
            Err(Error::Degenerate(_))
        ));
        let ok = KummerParams::parse("0.5", "1").unwrap();
        let u = u_stokes(
            &ok,
            &r("10"),
            1,
            StokesSign::Plus,
            TruncationRule::Nearest,
            p(),
        )
        .unwrap();
        assert_eq!(
            stokes_multiplier(&u).unwrap().re,
            BigReal::from_parts(1.into(), -1)
        );
        let nu = BesselOrder::parse("0.25").unwrap();
        assert!(i_stokes(&nu, &r("0.2"), 1, TruncationRule::Nearest, p()).is_err());
        assert!(i_stokes(&nu, &r("10"), 0, TruncationRule::Nearest, p()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let nu = BesselOrder::parse("0.25").unwrap();
        let v = k_stokes(
            &nu,
            &r("25"),
            3,
            StokesSign::Plus,
            TruncationRule::Nearest,
            p(),
        )
        .unwrap();
        let text = serde_json::to_string(&v.to_json()).unwrap();
        let back: ExpansionJson = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
        assert!(back.stokes_multiplier.is_some());
        assert_eq!(back.terms_sub.len(), 6);
    }

    #[test]
    fn signs_parse() {
        assert_eq!("+".parse::<StokesSign>().unwrap(), StokesSign::Plus);
        assert_eq!("-".parse::<StokesSign>().unwrap().flip(), StokesSign::Plus);
        assert!("0".parse::<StokesSign>().is_err());
    }
}
