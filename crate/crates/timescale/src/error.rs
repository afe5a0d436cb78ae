use thiserror::Error;

/// Errors raised by time-scale construction and calculus.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TimeScaleError {
    #[error("point {0} is not on the grid")]
    NotOnGrid(f64),
    #[error("grid too small: need at least {needed} points, have {got}")]
    GridTooSmall { needed: usize, got: usize },
    #[error("diamond weight {0} outside [0, 1]")]
    InvalidAlpha(f64),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("value count {values} does not match domain size {points}")]
    LengthMismatch { values: usize, points: usize },
    #[error("point {0} lies outside the domain of the grid function")]
    OutsideDomain(f64),
}

pub type Result<T> = std::result::Result<T, TimeScaleError>;
