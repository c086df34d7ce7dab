use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// A brute-force computation would exceed its configured bound.
    #[error("scale limit exceeded: {what} = {value} > bound {bound}")]
    Scale {
        what: &'static str,
        value: String,
        bound: String,
    },
    /// A result contradicted a guaranteed mathematical fact.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}
