use thiserror::Error;

/// Errors raised by the numerical and physics modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter violates an operation's precondition.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// The inputs are well formed but lie outside the mathematical domain
    /// of the operation (divergent series, unbound potential, E < m, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A computation produced NaN or an infinity.
    #[error("non-finite value in {0}")]
    NonFinite(String),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
