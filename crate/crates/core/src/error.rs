use thiserror::Error;

/// Failures reported by every fallible operation in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The requested series does not converge at the requested argument.
    #[error("divergent series: {0}")]
    DivergentSeries(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The coefficient function does not have the parity the formula needs.
    #[error("parity mismatch: {0}")]
    ParityMismatch(String),

    /// Acceleration parameters for which the formula cannot be solved for the
    /// unknown value.
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
