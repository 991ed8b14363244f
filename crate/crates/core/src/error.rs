use thiserror::Error;

/// Errors raised by the analysis library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LgError {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Inputs are individually valid but inconsistent with each other.
    #[error("contract violation: {0}")]
    Contract(String),
    /// The request would exceed an enumeration or work guard.
    #[error("resource limit: {0}")]
    Resource(String),
    /// A computed quantity broke an internal numerical invariant.
    #[error("internal consistency error: {0}")]
    Consistency(String),
    /// Text could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, LgError>;

impl LgError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        LgError::Domain(msg.into())
    }

    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        LgError::Contract(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        LgError::Resource(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        LgError::Parse(msg.into())
    }
}
