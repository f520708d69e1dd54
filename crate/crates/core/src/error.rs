use thiserror::Error;

/// Errors raised by the library.
///
/// Everything except [`Error::Internal`] is a precondition failure on the
/// caller's input; `Internal` means an identity that must hold by
/// construction was violated.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("not a Plücker vector: {0}")]
    NotPluecker(String),
    #[error("zero pivot at position {index} in LDL factorization")]
    ZeroPivot { index: usize },
    #[error("genericity failure: {0}")]
    Genericity(String),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim(msg: impl Into<String>) -> Error {
    Error::Dimension(msg.into())
}

pub(crate) fn pre(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
