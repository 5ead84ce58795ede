use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// An integer index violates its precondition (for example `k > n`).
    #[error("index error: {0}")]
    Index(String),

    /// A truncated infinite sum did not reach its tail tolerance.
    #[error(
        "series `{series}` not converged after {terms} terms: \
         last retained term {last_term:e} exceeds tolerance {tolerance:e}"
    )]
    TruncationNotConverged {
        series: &'static str,
        terms: usize,
        last_term: f64,
        tolerance: f64,
    },

    /// Evaluation at a pole, e.g. the interpolation function at `x = 1`.
    #[error("singularity: {0}")]
    Singularity(String),

    #[error("unsupported generating-function descriptor `{0}`")]
    UnsupportedDescriptor(String),

    /// A sampled function returned NaN or an infinity.
    #[error("function sample is not finite at t = {t}")]
    NonFiniteSample { t: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn index(msg: impl Into<String>) -> Self {
        Error::Index(msg.into())
    }
}
