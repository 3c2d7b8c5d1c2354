use thiserror::Error;

/// Errors raised by the counting, analytic and character routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of a function.
    #[error("domain error: {0}")]
    Domain(String),

    /// `(x, r)` violates a hypothesis of the approximant's validity range.
    #[error("range error: {model} requires {hypothesis}")]
    Range { model: String, hypothesis: String },

    /// A sieve or table request exceeds the configured limits.
    #[error("resource error: {0}")]
    Resource(String),

    /// A caller broke a documented precondition (unsorted batch, principal character, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// A character table failed validation.
    #[error("invalid character: {0}")]
    Validation(String),

    /// Malformed textual input (rationals, character specs, config lines).
    #[error("parse error: {0}")]
    Parse(String),

    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
