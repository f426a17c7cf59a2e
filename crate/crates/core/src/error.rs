use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("infeasible parameters: A={a} must lie in [{lower}, {upper}) for m={m}, D={d}")]
    InfeasibleParams {
        m: usize,
        a: f64,
        d: f64,
        lower: f64,
        upper: f64,
    },

    #[error("outcome tree has {leaves} leaves, limit is {limit}")]
    TreeTooLarge { leaves: u128, limit: u128 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("format error at line {line}: {message}")]
    Format { line: usize, message: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
