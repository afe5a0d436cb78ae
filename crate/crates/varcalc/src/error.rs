use thiserror::Error;
use tsvar_dsl::DslError;
use tsvar_solver::SolveError;
use tsvar_timescale::TimeScaleError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum VarError {
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error(transparent)]
    TimeScale(#[from] TimeScaleError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("grid too small: need at least {needed} points, have {got}")]
    GridTooSmall { needed: usize, got: usize },
    #[error("the time scale does not satisfy sigma(t) = a1 t + a0")]
    HypothesisHViolated,
    #[error("no start converged out of {attempts}; last failure: {last}")]
    NoConvergence { attempts: usize, last: String },
    #[error("singular Jacobian at every start")]
    SingularJacobian,
    #[error("constraint cannot be met: {0}")]
    ConstraintInfeasible(String),
    #[error("precondition violated at t = {t}: C = {c} is not above phi = {phi}")]
    PreconditionViolated { t: f64, c: f64, phi: f64 },
    #[error("phi must be positive, got {value} at {at}")]
    NonPositivePhi { at: f64, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unknown catalog entry '{0}'")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, VarError>;
