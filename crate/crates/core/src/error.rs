use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("exact division failed: {0}")]
    NotDivisible(String),

    #[error("inconsistent linear system (rank {rank})")]
    Inconsistent { rank: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("module realization failed: {0}")]
    Realization(String),

    #[error("word budget of {budget} exhausted before spanning weight space {weight}")]
    SpanFailure { weight: String, budget: usize },

    #[error("integrality failure: {0}")]
    Integrality(String),

    #[error("bar-antisymmetry violated at pair {pair}: {coefficient}")]
    Antisymmetry { pair: usize, coefficient: String },

    #[error("triangular correction did not terminate for pair {0}")]
    NonterminatingCorrection(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    /// Errors that can only come from a broken invariant inside the library.
    pub fn is_integrity_failure(&self) -> bool {
        matches!(
            self,
            Error::NotDivisible(_)
                | Error::Realization(_)
                | Error::Integrality(_)
                | Error::Antisymmetry { .. }
                | Error::NonterminatingCorrection(_)
                | Error::SpanFailure { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
