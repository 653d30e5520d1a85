use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation (mismatched
    /// candidate sets, empty profiles, non-single-peaked input, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Input is valid but exceeds a size guard of an exact algorithm.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown voter: {0}")]
    UnknownVoter(String),

    /// A convergence, potential or consistency law that must hold was broken.
    #[error("law violated: {0}")]
    LawViolation(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
