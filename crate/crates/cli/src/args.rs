use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "qbern",
    version,
    about = "Bernstein and q-Bernstein-type polynomials"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity at one parameter point.
    Eval(EvalArgs),
    /// Tabulate a quantity over parameter lists and an x grid.
    Table(TableArgs),
    /// Run an identity-verification suite, one JSON report per line.
    Verify(VerifyArgs),
    /// Approximation errors of an operator applied to a builtin function.
    Approx(ApproxArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct EvalArgs {
    /// basis, y, y-sum, genfun, genfun-series, s_q, s_q-series, s-derivative,
    /// hermite, bernoulli, stirling2, gauss-binomial, q-int, moment, phillips,
    /// operator, q-operator, beta-density, hermite-sum
    pub quantity: String,
    #[arg(long)]
    pub j: Option<i64>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub k: Option<u32>,
    #[arg(long)]
    pub m: Option<u32>,
    #[arg(long)]
    pub r: Option<i64>,
    #[arg(long)]
    pub v: Option<u32>,
    #[arg(long)]
    pub x: Option<f64>,
    #[arg(long)]
    pub y: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    /// Complex, e.g. `2`, `-3`, `1+1i`, `0.5i`.
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// Complex, as `--z`.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<String>,
    /// Builtin function: cos, exp, abs-shift or square.
    #[arg(long = "fn")]
    pub func: Option<String>,
    /// Series truncation length.
    #[arg(long)]
    pub terms: Option<usize>,
    /// Round to this many significant digits.
    #[arg(long)]
    pub precision: Option<usize>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct TableArgs {
    /// basis, y (alias y_poly), s_q, phillips, operator-error or moment
    pub quantity: String,
    /// Lists are comma separated; each item is a value or `start:stop:step`.
    #[arg(long, allow_hyphen_values = true)]
    pub n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    /// x values; `--x` is an alias.
    #[arg(long, visible_alias = "x", allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[arg(long = "fn")]
    pub func: Option<String>,
    #[arg(long)]
    pub operator: Option<String>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub precision: Option<usize>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// all, classical, q-forms, identities, interp or convexity
    pub suite: String,
    /// Replace every check's tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct ApproxArgs {
    /// cos, exp, abs-shift or square
    #[arg(value_name = "FN")]
    pub func: String,
    /// classical, q-type or phillips
    pub operator: String,
    #[arg(long, default_value = "10,20,50,100")]
    pub n: String,
    #[arg(long, default_value = "1")]
    pub q: f64,
    #[arg(long, default_value = "0:1:0.01")]
    pub grid: String,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub precision: Option<usize>,
}
