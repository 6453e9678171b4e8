use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "polyquad", version, about = "Solid-angle weighted lattice quadrature over integer polygons")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quadrature rule at one N.
    Integrate(IntegrateArgs),
    /// Errors and observed orders over a list of N.
    Convergence(ConvergenceArgs),
    /// Interior and boundary counts and the Pick residual.
    Pick(PolygonArg),
    /// Closed form of a Bernoulli lattice sum.
    LemmaSum(LemmaArgs),
    /// Reproduce the worked triangle example.
    AppendixExample,
    /// Print the Bernoulli polynomial B_j (classical B_j / j!).
    Bernoulli(BernoulliArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Weighted,
    Trapezoid,
    /// `sum c_i S(2^{i-1} N)` with `k` levels.
    Accelerated(usize),
    Collected,
}

impl Method {
    pub fn name(&self) -> String {
        match self {
            Method::Weighted => "weighted".into(),
            Method::Trapezoid => "trapezoid".into(),
            Method::Accelerated(k) => format!("accelerated-{k}"),
            Method::Collected => "collected".into(),
        }
    }
}

impl FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "weighted" => Ok(Method::Weighted),
            "trapezoid" => Ok(Method::Trapezoid),
            "collected" => Ok(Method::Collected),
            "accelerated" => Ok(Method::Accelerated(0)),
            _ => match s.strip_prefix("accelerated-").map(str::parse::<usize>) {
                Some(Ok(k)) if (1..=6).contains(&k) => Ok(Method::Accelerated(k)),
                _ => Err(format!(
                    "unknown method {s:?}; expected weighted, trapezoid, collected, accelerated or accelerated-K (K in 1..=6)"
                )),
            },
        }
    }
}

#[derive(Debug, Args)]
pub struct PolygonArg {
    /// JSON file `{"vertices": [[x, y], ...]}`.
    #[arg(long)]
    pub polygon: PathBuf,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FunctionArg {
    /// JSON file `{"monomials": [[num, den, xpow, ypow], ...]}` or `{"builtin": name}`.
    #[arg(long)]
    pub function: Option<PathBuf>,
    /// Inline monomials `coef:xpow:ypow,...`, e.g. `1:2:3,-1/2:0:1`.
    #[arg(long, allow_hyphen_values = true)]
    pub monomials: Option<String>,
    /// Named analytic integrand (`expxy`, `sinxcosy`).
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
pub struct IntegrateArgs {
    #[command(flatten)]
    pub polygon: PolygonArg,
    #[command(flatten)]
    pub function: FunctionArg,
    #[arg(long = "N", value_name = "N")]
    pub n: u64,
    #[arg(long, default_value = "weighted")]
    pub method: Method,
    /// Number of levels for `--method accelerated`.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ConvergenceArgs {
    #[command(flatten)]
    pub polygon: PolygonArg,
    #[command(flatten)]
    pub function: FunctionArg,
    /// Comma-separated sample sizes, at least three.
    #[arg(long = "N-list", value_name = "LIST", value_delimiter = ',', required = true)]
    pub n_list: Vec<u64>,
    /// Repeatable; defaults to weighted, accelerated-2 and accelerated-3.
    #[arg(long)]
    pub method: Vec<Method>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Also fit the even-power expansion with this many correction terms.
    #[arg(long)]
    pub w: Option<u32>,
}

#[derive(Debug, Args)]
#[group(id = "lemma_input", required = true, multiple = false)]
pub struct LemmaInput {
    /// JSON file `{"kind": "line"|"line2"|"double", "dirs": [...], "h": .., "k": ..}`.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// The same JSON given inline.
    #[arg(long)]
    pub inline: Option<String>,
}

#[derive(Debug, Args)]
pub struct LemmaArgs {
    #[command(flatten)]
    pub input: LemmaInput,
    /// Compare with the limit of the Gaussian-damped series.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct BernoulliArgs {
    #[arg(long)]
    pub j: usize,
}
