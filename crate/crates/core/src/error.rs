use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An input violates a documented precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation would exceed a configured size cap.
    #[error("resource cap exceeded: {what} needs {required}, cap is {cap}")]
    Resource {
        what: String,
        required: f64,
        cap: f64,
    },

    /// The input is valid but no constant/formula is available for it.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Two algebraically equal routes disagreed beyond tolerance.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    /// Malformed external input (CSV, JSON, law specs).
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
