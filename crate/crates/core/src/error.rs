use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid iquiver: {0}")]
    Quiver(String),

    #[error("budget exceeded at dimension vector {dim:?}: {reason}")]
    Budget { dim: Vec<u32>, reason: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("context mismatch: {0}")]
    Context(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
