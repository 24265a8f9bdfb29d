use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use stokes_core::bigfloat::{format_paper, format_paper_complex, format_sci, parse_rational};
use stokes_core::coeffs::{a_coeffs, algebraic_coeffs_exact, CoefficientSet};
use stokes_core::exactpoly::{g_polynomials, ghat_polynomials};
use stokes_core::expansions::{
    i_poincare, i_stokes, k_naive_stokes, k_stokes, kummer_stokes, u_stokes, ExpansionJson,
};
use stokes_core::oracle::{
    bessel_i_series, bessel_k_real, f_remainder, g_remainder, k_on_stokes_line, kummer_m_series,
    u_on_stokes_line,
};
use stokes_core::{
    BesselOrder, BigComplex, BigReal, Error, KummerParams, OracleConfig, Precision, Result,
};

use crate::args::{CoeffsArgs, EvalArgs, EvalFn, NumberFormat, OracleArgs, OracleFn};
use crate::{m_warning, need, parse_rule, parse_sign, precision, Output};

pub fn run_coeffs(a: &CoeffsArgs) -> Result<Output> {
    let mut s = String::new();
    if a.ghat || a.gpoly {
        let (polys, step, name) = if a.ghat {
            (ghat_polynomials(a.kmax)?, 2, "ghat")
        } else {
            (g_polynomials(a.kmax)?, 1, "g")
        };
        let _ = writeln!(
            s,
            "# {name}_k(gamma), coefficients of gamma^0, gamma^1, ... as exact rationals"
        );
        let _ = writeln!(s, "k\tcoefficients");
        for (i, poly) in polys.iter().enumerate() {
            let _ = writeln!(s, "{}\t{poly}", i * step);
        }
        return Ok(Output {
            stdout: s,
            warnings: Vec::new(),
        });
    }

    let x = parse_rational(need(&a.x, "x")?)?;
    let rule = parse_rule(&a.truncation)?;
    let p = precision(a.digits, 5, a.bits)?;
    let d = a.digits as usize;
    let (set, first, label) = match (&a.nu, &a.a, &a.b) {
        (Some(nu), None, None) => {
            let nu = BesselOrder::parse(nu)?;
            let params = nu.kummer_params();
            let set = CoefficientSet::bessel(&nu, &x, a.m, rule, p)?;
            let first = a_coeffs(&nu, a.m.saturating_sub(1), p);
            let _ = write!(s, "# nu={nu} a={} b={}", params.a(), params.b());
            (set, first, "a_j")
        }
        (None, Some(pa), Some(pb)) => {
            let params = KummerParams::parse(pa, pb)?;
            let set = CoefficientSet::kummer(&params, &x, a.m, rule, p)?;
            let first = algebraic_coeffs_exact(&params, a.m.saturating_sub(1))
                .iter()
                .map(|r| BigReal::from_ratio(r, p))
                .collect();
            let _ = write!(s, "# a={} b={}", params.a(), params.b());
            (set, first, "c_j")
        }
        _ => {
            return Err(Error::Usage(
                "pass either --nu, or both --a and --b (or --ghat / --gpoly)".into(),
            ))
        }
    };
    let t = set.trunc();
    let _ = writeln!(
        s,
        " x={x} m_o={} alpha={} M={} truncation={} bits={}",
        t.m_o(),
        t.alpha(),
        a.m,
        t.rule(),
        p.bits()
    );
    let _ = writeln!(s, "j\t{label}\tA_j\tB_j");
    let rows = first.iter().zip(set.upper_a()).zip(set.upper_b()).take(a.m);
    for (j, ((c, upper_a), upper_b)) in rows.enumerate() {
        let _ = writeln!(
            s,
            "{j}\t{}\t{}\t{}",
            format_sci(c, d),
            format_sci(upper_a, d),
            format_sci(upper_b, d)
        );
    }
    Ok(Output {
        stdout: s,
        warnings: m_warning(a.m).into_iter().collect(),
    })
}

/// Inputs echoed next to an evaluation result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalInput {
    pub function: String,
    pub nu: Option<String>,
    pub a: Option<String>,
    pub b: Option<String>,
    pub x: String,
    pub m: usize,
    pub sign: String,
    pub truncation: String,
    pub digits: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalJson {
    pub input: EvalInput,
    pub result: ExpansionJson,
}

fn eval_fn_name(f: EvalFn) -> &'static str {
    match f {
        EvalFn::I => "I",
        EvalFn::K => "K",
        EvalFn::U => "U",
        EvalFn::M => "1F1",
        EvalFn::INaive => "I-naive",
        EvalFn::KNaive => "K-naive",
    }
}

pub fn run_eval(a: &EvalArgs) -> Result<Output> {
    let x = parse_rational(&a.x)?;
    let sign = parse_sign(&a.sign)?;
    let rule = parse_rule(&a.truncation)?;
    let p = precision(a.digits, 5, a.bits)?;
    let bessel = || -> Result<BesselOrder> { BesselOrder::parse(need(&a.nu, "nu")?) };
    let kummer =
        || -> Result<KummerParams> { KummerParams::parse(need(&a.a, "a")?, need(&a.b, "b")?) };
    let result = match a.function {
        EvalFn::I => i_stokes(&bessel()?, &x, a.m, rule, p)?,
        EvalFn::K => k_stokes(&bessel()?, &x, a.m, sign, rule, p)?,
        EvalFn::U => u_stokes(&kummer()?, &x, a.m, sign, rule, p)?,
        EvalFn::M => kummer_stokes(&kummer()?, &x, a.m, rule, p)?,
        EvalFn::INaive => i_poincare(&bessel()?, &x, a.m, p)?,
        EvalFn::KNaive => k_naive_stokes(&bessel()?, &x, a.m, p)?,
    };
    let d = a.digits as usize;
    let warnings = result.warnings.clone();
    let stdout = if a.json {
        let doc = EvalJson {
            input: EvalInput {
                function: eval_fn_name(a.function).into(),
                nu: a.nu.clone(),
                a: a.a.clone(),
                b: a.b.clone(),
                x: a.x.clone(),
                m: a.m,
                sign: sign.to_string(),
                truncation: rule.to_string(),
                digits: a.digits,
            },
            result: result.to_json_digits(d),
        };
        let mut text =
            serde_json::to_string_pretty(&doc).map_err(|e| Error::Invariant(e.to_string()))?;
        text.push('\n');
        text
    } else {
        let mut s = String::new();
        let c = |z: &BigComplex| format!("{}\t{}", format_sci(&z.re, d), format_sci(&z.im, d));
        let _ = writeln!(
            s,
            "# {} x={x} M={} sign={sign} bits={}",
            result.kind,
            a.m,
            p.bits()
        );
        if let Some(t) = &result.trunc {
            let _ = writeln!(s, "m_o\t{}", t.m_o());
            let _ = writeln!(s, "alpha\t{}", t.alpha());
        }
        let _ = writeln!(s, "dominant\t{}", c(&result.dominant));
        let _ = writeln!(s, "subdominant\t{}", c(&result.subdominant));
        let _ = writeln!(s, "total\t{}", c(&result.total()));
        if let Some(b) = &result.stokes_multiplier {
            let _ = writeln!(s, "stokes_multiplier\t{}", c(b));
        }
        s
    };
    Ok(Output { stdout, warnings })
}

fn parse_complex(s: &str, p: Precision) -> Result<BigComplex> {
    let (re, im) = s.split_once(',').unwrap_or((s, "0"));
    Ok(BigComplex::new(
        BigReal::from_ratio(&parse_rational(re)?, p),
        BigReal::from_ratio(&parse_rational(im)?, p),
    ))
}

pub fn run_oracle(a: &OracleArgs) -> Result<Output> {
    let mut cfg = OracleConfig::new(a.digits)?;
    if let Some(b) = a.bits {
        cfg = cfg.with_bits(b);
    }
    let sign = parse_sign(&a.sign)?;
    let rule = parse_rule(&a.truncation)?;
    let nu = || -> Result<BesselOrder> { BesselOrder::parse(need(&a.nu, "nu")?) };
    let x = || -> Result<stokes_core::Rational> { parse_rational(need(&a.x, "x")?) };
    let value: BigComplex = match a.function {
        OracleFn::I => bessel_i_series(&nu()?, &x()?, &cfg)?.into(),
        OracleFn::K => bessel_k_real(&nu()?, &x()?, &cfg)?.into(),
        OracleFn::KLine => k_on_stokes_line(&nu()?, &x()?, sign, &cfg)?,
        OracleFn::F => f_remainder(&nu()?, &x()?, rule, &cfg)?.into(),
        OracleFn::G => g_remainder(&nu()?, &x()?, sign, rule, &cfg)?,
        OracleFn::M => {
            let pa = parse_rational(need(&a.a, "a")?)?;
            let pb = parse_rational(need(&a.b, "b")?)?;
            let z = match (&a.z, &a.x) {
                (Some(z), _) => parse_complex(z, cfg.output_precision())?,
                (None, Some(_)) => {
                    BigComplex::from_real(BigReal::from_ratio(&-x()?, cfg.output_precision()))
                }
                (None, None) => return Err(Error::Usage("₁F₁ needs --z or --x".into())),
            };
            kummer_m_series(&pa, &pb, &z, &cfg)?
        }
        OracleFn::U => {
            let pa = parse_rational(need(&a.a, "a")?)?;
            let pb = parse_rational(need(&a.b, "b")?)?;
            u_on_stokes_line(&pa, &pb, &x()?, sign, &cfg)?
        }
    };
    let d = a.digits as usize;
    let real = matches!(a.function, OracleFn::I | OracleFn::K | OracleFn::F);
    let line = match (a.format, real) {
        (NumberFormat::Paper, true) => format_paper(&value.re, d),
        (NumberFormat::Paper, false) => format_paper_complex(&value, d),
        (NumberFormat::Sci, true) => format_sci(&value.re, d),
        (NumberFormat::Sci, false) => {
            format!("{}\t{}", format_sci(&value.re, d), format_sci(&value.im, d))
        }
    };
    Ok(Output {
        stdout: format!("{line}\n"),
        warnings: Vec::new(),
    })
}
