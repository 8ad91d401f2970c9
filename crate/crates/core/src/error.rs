use thiserror::Error;

/// Errors raised by the library. Verification failures are not errors; they
/// are reported through the various report types.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable {0} would receive a negative exponent")]
    NegativeExponent(String),

    #[error("cannot parse variable name {0:?}")]
    BadVariable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{outer}/{inner} admits {count} {mode} strip tilings for n = {n}; at most one was expected")]
    NonUniqueTiling {
        outer: String,
        inner: String,
        n: usize,
        mode: String,
        count: usize,
    },

    #[error("shape cap exceeded: {0}")]
    CapExceeded(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("type assignment search found {0} passing candidates, expected exactly one")]
    AssignmentNotUnique(usize),

    #[error("fixture error: {0}")]
    Fixture(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
