use thiserror::Error;

/// Errors raised by the algebra, theta, bundle and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A series or ring element whose constant term is not a unit was inverted.
    #[error("not invertible: {0}")]
    Invert(String),
    /// An operation was called outside its contract (mismatched orders, bad spec, ...).
    #[error("usage error: {0}")]
    Usage(String),
    /// A polynomial expected to be symmetric in a root family is not.
    #[error("not symmetric: {0}")]
    Symmetry(String),
    /// A numeric argument lies outside the domain of definition.
    #[error("domain error: {0}")]
    Domain(String),
    /// Reading input or writing output failed.
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Usage(msg.into()))
}
