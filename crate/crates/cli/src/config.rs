use clap::{Parser, ValueEnum};
use serde::Serialize;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubcommandKind {
    Sieve,
    Sum,
    Compare,
    Identity,
    Lemma,
    Dirichlet,
    Constant,
    Twisted,
    E2,
    Counterexample,
    VerifyAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Every flag of every subcommand. Values are validated against the
/// subcommand at dispatch time and the resolved config is echoed in the
/// report.
#[derive(Clone, Debug, Parser, Serialize)]
#[command(name = "shortsums", version, about = "Short-interval sums of multiplicative functions")]
pub struct RunConfig {
    #[arg(value_enum)]
    pub subcommand: SubcommandKind,

    /// Left end of the window (x, x+H].
    #[arg(long)]
    pub x: Option<u64>,
    /// Window length.
    #[arg(long = "H")]
    pub h: Option<u64>,
    /// Window length as H = ⌈x^θ⌉.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Divisor order, Heath-Brown order or number of dyadic variables.
    #[arg(long)]
    pub k: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long = "P")]
    pub p: Option<f64>,
    #[arg(long = "Q")]
    pub q: Option<f64>,
    /// Sieve level.
    #[arg(long)]
    pub y: Option<f64>,
    /// Major-arc exponent: q <= (log x)^B.
    #[arg(long = "B")]
    pub b: Option<f64>,
    #[arg(long = "T0")]
    pub t0: Option<f64>,
    #[arg(long = "T1")]
    pub t1: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
    /// Long comparison window (x, x+y1].
    #[arg(long)]
    pub y1: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub windows: Option<usize>,

    /// Arithmetic function: mobius, divisor, omega, big_omega, omega_range,
    /// two_squares, e2, von_mangoldt.
    #[arg(long = "f")]
    pub function: Option<String>,
    /// Exponent tuple for `lemma`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub alphas: Option<Vec<f64>>,
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Identity check: ramare, heath-brown, sandwich, coefficients, extraction.
    #[arg(long)]
    pub check: Option<String>,
    /// Dirichlet polynomial: zeta, zeta_log, primes, mu, random.
    #[arg(long)]
    pub poly: Option<String>,
    /// Dirichlet measurement: mean, mvt, large, sup, decay.
    #[arg(long)]
    pub mode: Option<String>,
    /// Dirichlet polynomial length: support (N, 2N].
    #[arg(long = "N")]
    pub n: Option<u64>,
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long)]
    pub sigma: Option<f64>,
    #[arg(long)]
    pub digits: Option<u32>,
    /// Time budget in seconds for verify-all.
    #[arg(long)]
    pub budget: Option<u64>,

    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Base-prime cache file. Defaults to a file under $SHORTSUMS_CACHE_DIR
    /// when that variable is set.
    #[arg(long)]
    pub prime_cache: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
}

/// Environment variable naming the default prime cache directory.
pub const CACHE_DIR_ENV: &str = "SHORTSUMS_CACHE_DIR";
pub const DEFAULT_EPS: f64 = 0.01;
pub const DEFAULT_THETA: f64 = 0.56;
pub const DEFAULT_LEMMA_K: usize = 20;
pub const DEFAULT_BUDGET: u64 = 300;
