use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use stokes_core::bigfloat::{format_paper, format_paper_complex, format_sci};
use stokes_core::coeffs::optimal_truncation;
use stokes_core::expansions::{i_stokes, k_stokes, ComplexJson};
use stokes_core::oracle::{f_remainder, g_remainder};
use stokes_core::{
    BesselOrder, BigComplex, Error, OracleConfig, Rational, Result, StokesSign, TruncationRule,
};

use crate::args::{Format, TableArgs, TableFn, Which};
use crate::{m_warning, parse_m_range, parse_rule, parse_sign, precision, Output};

/// A fully resolved table request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableSpec {
    pub which: Which,
    pub function: TableFn,
    pub nu: String,
    pub x_values: Vec<String>,
    pub m_range: RangeInclusive<usize>,
    pub digits: u32,
    pub bits: Option<u32>,
    pub format: Format,
    pub truncation: TruncationRule,
    pub sign: StokesSign,
}

impl TableSpec {
    pub fn preset(which: Which) -> Self {
        let (function, xs) = match which {
            Which::Table2 => (TableFn::K, vec!["25"]),
            _ => (TableFn::I, vec!["10", "15.4", "20"]),
        };
        TableSpec {
            which,
            function,
            nu: "1/4".into(),
            x_values: xs.into_iter().map(String::from).collect(),
            m_range: 1..=7,
            digits: 10,
            bits: None,
            format: Format::Paper,
            truncation: if which == Which::Custom {
                TruncationRule::Nearest
            } else {
                TruncationRule::Floor
            },
            sign: StokesSign::Plus,
        }
    }

    /// Preset values overridden by whatever flags were given.
    pub fn from_args(a: &TableArgs) -> Result<Self> {
        let mut spec = Self::preset(a.which);
        if let Some(f) = a.function {
            spec.function = f;
        }
        if let Some(nu) = &a.nu {
            spec.nu = nu.clone();
        }
        if !a.x.is_empty() {
            spec.x_values = a.x.clone();
        }
        if let Some(m) = &a.m {
            spec.m_range = parse_m_range(m)?;
        }
        if let Some(t) = &a.truncation {
            spec.truncation = parse_rule(t)?;
        }
        spec.digits = a.digits;
        spec.bits = a.bits;
        spec.format = a.format;
        spec.sign = parse_sign(&a.sign)?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        if self.digits < 6 {
            return Err(Error::Usage(format!(
                "--digits must be at least 6, got {}",
                self.digits
            )));
        }
        if self.x_values.is_empty() {
            return Err(Error::Usage("at least one --x value is required".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRowJson {
    pub m: usize,
    pub value: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableColumnJson {
    pub x: String,
    pub m_o: u64,
    pub alpha: String,
    pub rows: Vec<TableRowJson>,
    pub oracle: ComplexJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub table: String,
    pub function: String,
    pub nu: String,
    pub truncation: String,
    pub sign: String,
    pub digits: u32,
    pub precision_bits: u32,
    pub columns: Vec<TableColumnJson>,
}

struct Column {
    label: String,
    m_o: u64,
    alpha: Rational,
    cells: Vec<BigComplex>,
    oracle: BigComplex,
}

/// Rows `M = lo..=hi` of the exponentially small expansion for every `x`,
/// then the oracle remainder. Cells are computed in parallel; the output
/// does not depend on completion order.
pub fn run_table(spec: &TableSpec) -> Result<Output> {
    spec.validate()?;
    let nu = BesselOrder::parse(&spec.nu)?;
    let xs: Vec<Rational> = spec
        .x_values
        .iter()
        .map(|s| stokes_core::bigfloat::parse_rational(s))
        .collect::<Result<_>>()?;
    let p = precision(spec.digits, 10, spec.bits)?;
    let mut cfg = OracleConfig::new(spec.digits.max(OracleConfig::MIN_DIGITS))?;
    if let Some(b) = spec.bits {
        cfg = cfg.with_bits(b);
    }
    let ms: Vec<usize> = spec.m_range.clone().collect();

    let grid: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| ms.iter().map(move |&m| (i, m)))
        .collect();
    let cells: Vec<BigComplex> = grid
        .par_iter()
        .map(|&(i, m)| {
            let r = match spec.function {
                TableFn::I => i_stokes(&nu, &xs[i], m, spec.truncation, p)?,
                TableFn::K => k_stokes(&nu, &xs[i], m, spec.sign, spec.truncation, p)?,
            };
            Ok(r.subdominant)
        })
        .collect::<Result<_>>()?;
    let oracles: Vec<BigComplex> = xs
        .par_iter()
        .map(|x| match spec.function {
            TableFn::I => f_remainder(&nu, x, spec.truncation, &cfg).map(BigComplex::from_real),
            TableFn::K => g_remainder(&nu, x, spec.sign, spec.truncation, &cfg),
        })
        .collect::<Result<_>>()?;

    let mut columns = Vec::with_capacity(xs.len());
    for (i, x) in xs.iter().enumerate() {
        let trunc = optimal_truncation(
            &(x * Rational::from_integer(2.into())),
            &Rational::from_integer(0.into()),
            spec.truncation,
        )?;
        columns.push(Column {
            label: spec.x_values[i].clone(),
            m_o: trunc.m_o(),
            alpha: trunc.alpha().clone(),
            cells: cells[i * ms.len()..(i + 1) * ms.len()].to_vec(),
            oracle: oracles[i].clone(),
        });
    }

    let mut out = Output::default();
    out.warnings.extend(m_warning(*spec.m_range.end()));
    if nu.is_half_integer() {
        out.warnings.push(format!(
            "half-integer order ν = {nu}: part of the exponentially small expansion vanishes"
        ));
    }
    out.stdout = match spec.format {
        Format::Json => render_json(spec, &nu, p.bits(), &ms, &columns)?,
        Format::Tsv | Format::Paper => render_text(spec, &nu, p.bits(), &ms, &columns),
    };
    Ok(out)
}

fn names(f: TableFn) -> (&'static str, &'static str) {
    match f {
        TableFn::I => ("S_I", "F_nu(x)"),
        TableFn::K => ("S_K", "G_nu(x)"),
    }
}

fn which_name(w: Which) -> &'static str {
    match w {
        Which::Table1 => "table1",
        Which::Table2 => "table2",
        Which::Custom => "custom",
    }
}

fn fn_name(f: TableFn) -> &'static str {
    match f {
        TableFn::I => "I",
        TableFn::K => "K",
    }
}

fn render_text(
    spec: &TableSpec,
    nu: &BesselOrder,
    bits: u32,
    ms: &[usize],
    cols: &[Column],
) -> String {
    let (series, oracle) = names(spec.function);
    let complex = spec.function == TableFn::K;
    let d = spec.digits as usize;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "# {} fn={} nu={} truncation={} sign={} digits={} bits={}",
        which_name(spec.which),
        fn_name(spec.function),
        nu,
        spec.truncation,
        spec.sign,
        spec.digits,
        bits
    );
    let mut header = vec!["M".to_owned()];
    for c in cols {
        let name = format!("{series}(M;{})", c.label);
        if complex && spec.format == Format::Tsv {
            header.push(format!("{name} re"));
            header.push(format!("{name} im"));
        } else {
            header.push(name);
        }
    }
    let _ = writeln!(s, "{}", header.join("\t"));
    let cell = |z: &BigComplex| -> Vec<String> {
        match (spec.format, complex) {
            (Format::Paper, true) => vec![format_paper_complex(z, d)],
            (Format::Paper, false) => vec![format_paper(&z.re, d)],
            (_, true) => vec![format_sci(&z.re, d), format_sci(&z.im, d)],
            (_, false) => vec![format_sci(&z.re, d)],
        }
    };
    for (row, m) in ms.iter().enumerate() {
        let mut line = vec![m.to_string()];
        for c in cols {
            line.extend(cell(&c.cells[row]));
        }
        let _ = writeln!(s, "{}", line.join("\t"));
    }
    let mut line = vec![oracle.to_owned()];
    for c in cols {
        line.extend(cell(&c.oracle));
    }
    let _ = writeln!(s, "{}", line.join("\t"));
    s
}

fn render_json(
    spec: &TableSpec,
    nu: &BesselOrder,
    bits: u32,
    ms: &[usize],
    cols: &[Column],
) -> Result<String> {
    let d = spec.digits as usize;
    let c = |z: &BigComplex| ComplexJson {
        re: format_sci(&z.re, d),
        im: format_sci(&z.im, d),
    };
    let table = TableJson {
        table: which_name(spec.which).into(),
        function: fn_name(spec.function).into(),
        nu: nu.to_string(),
        truncation: spec.truncation.to_string(),
        sign: spec.sign.to_string(),
        digits: spec.digits,
        precision_bits: bits,
        columns: cols
            .iter()
            .map(|col| TableColumnJson {
                x: col.label.clone(),
                m_o: col.m_o,
                alpha: col.alpha.to_string(),
                rows: ms
                    .iter()
                    .zip(&col.cells)
                    .map(|(&m, z)| TableRowJson { m, value: c(z) })
                    .collect(),
                oracle: c(&col.oracle),
            })
            .collect(),
    };
    let mut text =
        serde_json::to_string_pretty(&table).map_err(|e| Error::Invariant(e.to_string()))?;
    text.push('\n');
    Ok(text)
}
