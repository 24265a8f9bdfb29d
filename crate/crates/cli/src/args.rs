use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "stokes",
    version,
    about = "Exponentially improved expansions of I_ν, K_ν, U and ₁F₁ on their Stokes lines"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the exponentially small expansions against the oracle remainder.
    Table(TableArgs),
    /// Print coefficient tables: a_k, A_j, B_j, or the g-polynomials.
    Coeffs(CoeffsArgs),
    /// Evaluate one expansion with its term breakdown.
    Eval(EvalArgs),
    /// Evaluate a reference value from convergent series.
    Oracle(OracleArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Table1,
    Table2,
    Custom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Tsv,
    Json,
    Paper,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TableFn {
    #[value(name = "I")]
    I,
    #[value(name = "K")]
    K,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EvalFn {
    /// Exponentially improved expansion of e^{-πνi} I_ν(x e^{πi}).
    #[value(name = "I")]
    I,
    /// Exponentially improved expansion of K_ν(x e^{±πi}).
    #[value(name = "K")]
    K,
    /// Exponentially improved expansion of U(a, b, x e^{±πi}).
    #[value(name = "U")]
    U,
    /// Exponentially improved expansion of Γ(a)/Γ(b) ₁F₁(a; b; -x).
    #[value(name = "1F1")]
    M,
    /// Classical compound expansion of e^{-πνi} I_ν(x e^{πi}).
    #[value(name = "I-naive")]
    INaive,
    /// Classical compound expansion of K_ν(x e^{πi}).
    #[value(name = "K-naive")]
    KNaive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleFn {
    /// I_ν(x).
    #[value(name = "I")]
    I,
    /// K_ν(x), real argument.
    #[value(name = "K")]
    K,
    /// K_ν(x e^{±πi}).
    #[value(name = "K-line")]
    KLine,
    /// Remainder F_ν(x) after the optimally truncated dominant series.
    #[value(name = "F")]
    F,
    /// Remainder G_ν(x) after the optimally truncated dominant series.
    #[value(name = "G")]
    G,
    /// ₁F₁(a; b; z).
    #[value(name = "1F1")]
    M,
    /// U(a, b, x e^{±πi}).
    #[value(name = "U")]
    U,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NumberFormat {
    Paper,
    Sci,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct TableArgs {
    #[arg(long, value_enum, default_value = "table1")]
    pub which: Which,
    /// I (S_I against F_ν) or K (S_K against G_ν); presets choose their own.
    #[arg(long = "fn", value_enum)]
    pub function: Option<TableFn>,
    #[arg(long)]
    pub nu: Option<String>,
    /// Comma-separated list of x values.
    #[arg(long, value_delimiter = ',')]
    pub x: Vec<String>,
    /// Truncation index M or an inclusive range such as 1..7.
    #[arg(long = "m", visible_alias = "m-range", alias = "M")]
    pub m: Option<String>,
    #[arg(long, default_value_t = 10)]
    pub digits: u32,
    #[arg(long)]
    pub bits: Option<u32>,
    #[arg(long, value_enum, default_value = "paper")]
    pub format: Format,
    /// nearest or floor; the presets use floor.
    #[arg(long)]
    pub truncation: Option<String>,
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub sign: String,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct CoeffsArgs {
    /// Print ĝ_k = 6^k g_k for even k <= kmax as exact rationals.
    #[arg(long, conflicts_with_all = ["gpoly", "nu", "a", "b"])]
    pub ghat: bool,
    /// Print g_k for every k <= kmax as exact rationals.
    #[arg(long, conflicts_with_all = ["nu", "a", "b"])]
    pub gpoly: bool,
    #[arg(long, default_value_t = 8)]
    pub kmax: usize,
    #[arg(long)]
    pub nu: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long = "m", alias = "M", default_value_t = 7)]
    pub m: usize,
    #[arg(long, default_value_t = 20)]
    pub digits: u32,
    #[arg(long)]
    pub bits: Option<u32>,
    #[arg(long, default_value = "nearest")]
    pub truncation: String,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    pub function: EvalFn,
    #[arg(long)]
    pub nu: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub x: String,
    #[arg(long = "m", alias = "M", default_value_t = 7)]
    pub m: usize,
    #[arg(long, default_value_t = 20)]
    pub digits: u32,
    #[arg(long)]
    pub bits: Option<u32>,
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub sign: String,
    #[arg(long, default_value = "nearest")]
    pub truncation: String,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct OracleArgs {
    #[arg(long = "fn", value_enum)]
    pub function: OracleFn,
    #[arg(long)]
    pub nu: Option<String>,
    #[arg(long)]
    pub a: Option<String>,
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub x: Option<String>,
    /// Complex argument of ₁F₁ as `re` or `re,im` (default: -x).
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, default_value_t = 10)]
    pub digits: u32,
    #[arg(long)]
    pub bits: Option<u32>,
    #[arg(long, default_value = "+", allow_hyphen_values = true)]
    pub sign: String,
    #[arg(long, default_value = "nearest")]
    pub truncation: String,
    #[arg(long, value_enum, default_value = "paper")]
    pub format: NumberFormat,
}
