use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("index {index} out of range for a {dim}-simplex")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("enumeration cap exceeded while building {what}: more than {cap} candidates")]
    CapExceeded { what: String, cap: usize },

    #[error("malformed chain complex: {0}")]
    MalformedComplex(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}
