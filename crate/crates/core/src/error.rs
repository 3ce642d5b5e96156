use thiserror::Error;

/// Errors produced by samplers, evaluators and the experiment runner.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("point budget exceeded: expected {expected:.0} points, budget is {budget:.0}")]
    BudgetExceeded { expected: f64, budget: f64 },

    /// The simulation window cannot certify the result (unbounded cell or
    /// a radius too close to the window edge).
    #[error("window truncation: {0}")]
    Truncation(String),

    #[error("coincident points detected")]
    CoincidentPoints,

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("empty sample")]
    EmptySample,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{name} must be positive and finite, got {value}"
        )))
    }
}
