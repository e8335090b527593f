use thiserror::Error;

/// Errors raised by every operation in the crate.
///
/// The CLI maps [`Error::Resource`] to exit code 3 and everything else to
/// exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input lies outside the domain of the operation (zero entries,
    /// even or composite primes, violated hypotheses, unknown labels).
    #[error("domain error: {0}")]
    Domain(String),
    /// An enumeration would exceed a desk-scale resource cap.
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    /// A brute-force oracle could not certify an answer at the given depth.
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    /// A bounded search finished without a solution.
    #[error("not found within bound {bound}")]
    NotFound { bound: u64 },
    /// Two computations that must agree did not, or an input set is not
    /// closed under an operation it must be closed under.
    #[error("consistency error: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Short machine-readable tag, used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Resource(_) => "resource",
            Error::Inconclusive(_) => "inconclusive",
            Error::NotFound { .. } => "not_found",
            Error::Consistency(_) => "consistency",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
