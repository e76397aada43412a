use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("prime power {p}^{e} is not covered by the explicit prime-power rule")]
    UncoveredPrimePower { p: u64, e: u32 },

    #[error("no value for prime {p}: {reason}")]
    UncoveredPrime { p: u64, reason: String },

    #[error("n = {n} exceeds the validity range n <= X^k = {limit}")]
    OutOfValidity { n: u64, limit: f64 },

    #[error("coefficient a_{r} is nonzero beyond the support bound {bound}")]
    SupportOverflow { r: u64, bound: f64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("Landau-Ramanujan methods disagree: direct = {direct}, accelerated = {accelerated}")]
    NonAgreement { direct: f64, accelerated: f64 },

    #[error("tuple has K = {0} entries, brute force is limited to K <= 20")]
    CostGuard(usize),

    #[error("empty Dirichlet polynomial")]
    EmptyPolynomial,

    #[error("prime cache: {0}")]
    PrimeCache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
