//! Library side of the `stokes` binary: argument types, the four
//! subcommands, and the mapping from errors to exit codes. Everything is a
//! pure function from arguments to text so it can be tested in-process.

use std::ffi::OsString;
use std::ops::RangeInclusive;

use clap::Parser;
use stokes_core::{Error, Precision, Result, StokesSign, TruncationRule};

pub mod args;
mod commands;
mod table;

pub use args::Cli;
pub use commands::{run_coeffs, run_eval, run_oracle, EvalInput, EvalJson};
pub use table::{run_table, TableColumnJson, TableJson, TableRowJson, TableSpec};

/// Text produced by a subcommand, plus warnings destined for stderr.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub warnings: Vec<String>,
}

/// Result of one full invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::Parse { .. } => EXIT_USAGE,
        _ => EXIT_DOMAIN,
    }
}

/// Parse `args` (including the program name) and run the subcommand.
pub fn run<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Invocation {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Invocation {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => Invocation {
            code: EXIT_OK,
            stdout: out.stdout,
            stderr: out
                .warnings
                .iter()
                .map(|w| format!("warning: {w}\n"))
                .collect(),
        },
        Err(e) => Invocation {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(command: args::Command) -> Result<Output> {
    match command {
        args::Command::Table(a) => run_table(&TableSpec::from_args(&a)?),
        args::Command::Coeffs(a) => run_coeffs(&a),
        args::Command::Eval(a) => run_eval(&a),
        args::Command::Oracle(a) => run_oracle(&a),
    }
}

pub(crate) fn parse_sign(s: &str) -> Result<StokesSign> {
    s.parse()
        .map_err(|_| Error::Usage(format!("--sign takes + or -, got {s:?}")))
}

pub(crate) fn parse_rule(s: &str) -> Result<TruncationRule> {
    s.parse()
        .map_err(|_| Error::Usage(format!("--truncation takes nearest or floor, got {s:?}")))
}

/// `7` or `1..7` (inclusive).
pub fn parse_m_range(s: &str) -> Result<RangeInclusive<usize>> {
    let bad = || {
        Error::Usage(format!(
            "--m takes N or LO..HI with 1 <= LO <= HI, got {s:?}"
        ))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (lo, hi.trim_start_matches('=')),
        None => (s, s),
    };
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().parse().map_err(|_| bad())?;
    if lo == 0 || lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

pub(crate) fn precision(digits: u32, extra_digits: u32, bits: Option<u32>) -> Result<Precision> {
    match bits {
        Some(b) => Precision::new(b),
        None => Ok(Precision::from_digits(digits + extra_digits)),
    }
}

pub(crate) fn need<'a>(value: &'a Option<String>, flag: &str) -> Result<&'a str> {
    value
        .as_deref()
        .ok_or_else(|| Error::Usage(format!("missing required flag --{flag}")))
}

pub(crate) fn m_warning(m: usize) -> Option<String> {
    (m > stokes_core::expansions::VALIDATED_MAX_M).then(|| {
        format!(
            "M = {m} is above {}; the extra coefficients are generated but not cross-checked",
            stokes_core::expansions::VALIDATED_MAX_M
        )
    })
}
