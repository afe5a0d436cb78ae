use thiserror::Error;
use tsvar_dsl::DslError;
use tsvar_special::SpecialError;
use tsvar_timescale::TimeScaleError;
use tsvar_varcalc::VarError;

/// Errors from the fractional operators and solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FracError {
    #[error("fractional order must be positive, got {0}")]
    OrderNotPositive(f64),
    #[error("{name} = {value} outside (0, 1]")]
    OrderOutOfRange { name: &'static str, value: f64 },
    #[error("t = {0} is not an admissible evaluation point")]
    OffDomain(f64),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    TimeScale(#[from] TimeScaleError),
    #[error(transparent)]
    Var(#[from] VarError),
}

pub type Result<T> = std::result::Result<T, FracError>;
