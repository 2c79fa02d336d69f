//! Error types shared by all modules of the library.

/// Library-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CollapseError {
    /// An argument lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A numerical routine failed to reach the requested accuracy.
    /// `value` is the best estimate obtained, `residual` its error estimate.
    #[error("numeric error in {context}: residual {residual:e} exceeds tolerance (best value {value:e})")]
    Numeric {
        context: String,
        value: f64,
        residual: f64,
    },

    /// A stated precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The requested variant is not supported.
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, CollapseError>;

impl CollapseError {
    pub fn domain(msg: impl Into<String>) -> Self {
        CollapseError::Domain(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        CollapseError::Precondition(msg.into())
    }
}
