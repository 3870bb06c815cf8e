use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degree of the zero element is undefined")]
    UndefinedDegree,
    #[error("leading coefficient is not invertible")]
    SingularLeadingTerm,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("independent constructions disagree: {0}")]
    DualPathMismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
