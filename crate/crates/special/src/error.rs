use thiserror::Error;
use tsvar_timescale::TimeScaleError;

/// Errors from special functions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("Gamma pole at {0}")]
    Pole(f64),
    #[error("domain error in {what} at {x}")]
    Domain { what: &'static str, x: f64 },
    #[error("1 + mu p vanishes at t = {0}")]
    NonRegressive(f64),
    #[error(transparent)]
    TimeScale(#[from] TimeScaleError),
}

pub type Result<T> = std::result::Result<T, SpecialError>;
