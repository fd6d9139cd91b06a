use thiserror::Error;

use crate::certificate::Certificate;

#[derive(Debug, Error)]
pub enum Error {
    /// The instance itself is malformed (bad vertex index, length mismatch, ...).
    #[error("invalid instance: {0}")]
    Instance(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An input coloring failed a verification it was required to pass.
    #[error("input coloring rejected: {reason}")]
    Rejected {
        reason: String,
        certificate: Box<Certificate>,
    },

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A construction produced something its own checker refuses. Always a bug.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
