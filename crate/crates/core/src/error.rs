use thiserror::Error;

/// Errors raised by the algebraic layers (everything below the CLI).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("collection exceeded the step budget of {budget} rewrite steps")]
    StepBudget { budget: u64 },
    #[error("nilpotency not established within class bound {bound}")]
    ClassBound { bound: usize },
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("subgroup is not normal: {0}")]
    NotNormal(String),
    #[error("subgroup is not invariant under the action: {0}")]
    NotInvariant(String),
    #[error("matrix is not unimodular: {0}")]
    NotUnimodular(String),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("finite quotient has more than {limit} elements")]
    QuotientTooLarge { limit: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
