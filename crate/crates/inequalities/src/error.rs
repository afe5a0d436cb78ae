use thiserror::Error;
use tsvar_special::SpecialError;
use tsvar_timescale::TimeScaleError;

/// Errors from bound calculators and certifiers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum IneqError {
    #[error("function is not positively regressive at t = {0}")]
    NonRegressive(f64),
    #[error("Psi inverse undefined at t = {t} (argument {value})")]
    OutsideDomPsiInverse { t: f64, value: f64 },
    #[error("quadrature failed on [{a}, {b}]")]
    QuadratureFailure { a: f64, b: f64 },
    #[error("weight mass is zero")]
    ZeroWeightMass,
    #[error("exponent must exceed 1, got {0}")]
    InvalidExponent(f64),
    #[error("need p >= q > 0, got p = {p}, q = {q}")]
    InvalidExponents { p: f64, q: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("non-finite state at t = {0}")]
    NonFinite(f64),
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error(transparent)]
    TimeScale(#[from] TimeScaleError),
    #[error(transparent)]
    Special(#[from] SpecialError),
}

pub type Result<T> = std::result::Result<T, IneqError>;
