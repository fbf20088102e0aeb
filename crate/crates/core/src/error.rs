use thiserror::Error;

/// Errors raised by the library. Numerical disagreement in a verification is
/// never an error; it is reported in the corresponding report structure.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid weight {k}: {reason}")]
    InvalidWeight { k: i64, reason: String },

    #[error("invalid index: {0}")]
    InvalidIndex(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is singular (determinant zero)")]
    SingularMatrix,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("division is not exact: {0}")]
    InexactDivision(String),

    #[error("substitution is not linear: {0}")]
    NonlinearSubstitution(String),

    #[error("coefficient rings do not match: {0}")]
    RingMismatch(String),

    #[error("divergent value requested: {0}")]
    Divergent(String),

    #[error("q-order too small: {0}")]
    InsufficientOrder(String),

    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    #[error("cannot parse {what}: {input}")]
    Parse { what: &'static str, input: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid_weight(k: impl Into<i64>, reason: impl Into<String>) -> Error {
    Error::InvalidWeight { k: k.into(), reason: reason.into() }
}

/// Accepts even weights `k >= min`.
pub(crate) fn require_even_weight(k: u32, min: u32) -> Result<()> {
    if k < min {
        return Err(invalid_weight(k, format!("weight must be at least {min}")));
    }
    if k % 2 != 0 {
        return Err(invalid_weight(k, "weight must be even"));
    }
    Ok(())
}
