use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Arguments violate a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A numerical routine failed to meet its tolerance or did not converge.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

pub(crate) fn numerical(msg: impl Into<String>) -> Error {
    Error::Numerical(msg.into())
}
