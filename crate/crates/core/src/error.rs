use thiserror::Error;

/// Crate-wide error type. Variants map onto the CLI exit-code classes:
/// input/domain errors (usage), `Infeasible` (strict preconditions or
/// oracle budgets), `NotFound` (a search legitimately exhausted), and
/// `Internal` (a bug: a constructed certificate failed verification).
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("vertex {v} out of range for a tournament on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("sets must be disjoint")]
    Overlap,
    #[error("set must be nonempty")]
    EmptySet,
    #[error("not a permutation of the vertex set")]
    NotPermutation,
    #[error("tournament too large: n={n} exceeds cap {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn infeasible(msg: impl Into<String>) -> Self {
        Error::Infeasible(msg.into())
    }

    pub fn not_found(msg: impl Into<String>) -> Self {
        Error::NotFound(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
