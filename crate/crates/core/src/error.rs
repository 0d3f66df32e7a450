use thiserror::Error;

use crate::semifield::SemifieldTag;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("semifield mismatch: {0} vs {1}")]
    TagMismatch(SemifieldTag, SemifieldTag),

    /// A value lies outside the carrier or an operation is undefined there
    /// (inverse of zero, nonpositive sample under max-times, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    /// Minimization of a polynomial whose exponents all share one strict sign.
    #[error("infimum is zero and not attained: all exponents have the same strict sign")]
    Unbounded,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("exhaustive search refused: {samples} samples exceeds the limit of {limit}")]
    GuardRefused { samples: usize, limit: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
