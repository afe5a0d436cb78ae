use thiserror::Error;
use tsvar_fracvar::FracError;
use tsvar_inequalities::IneqError;
use tsvar_varcalc::VarError;

/// Failure of a command, carrying its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Exit 2.
    #[error("config error: {0}")]
    Config(String),
    /// Exit 3: no start converged.
    #[error("no convergence: {0}")]
    NoConvergence(String),
    /// Exit 1.
    #[error("{0}")]
    Failed(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::NoConvergence(_) => 3,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<VarError> for CliError {
    fn from(e: VarError) -> Self {
        match e {
            VarError::NoConvergence { .. } | VarError::SingularJacobian => CliError::NoConvergence(e.to_string()),
            VarError::Dsl(_) | VarError::InvalidParameter(_) | VarError::UnknownName(_) | VarError::GridTooSmall { .. } => {
                CliError::Config(e.to_string())
            }
            VarError::HypothesisHViolated => CliError::Config(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<FracError> for CliError {
    fn from(e: FracError) -> Self {
        match e {
            FracError::Var(v) => v.into(),
            FracError::OrderNotPositive(_) | FracError::OrderOutOfRange { .. } | FracError::InvalidGrid(_) => {
                CliError::Config(e.to_string())
            }
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<IneqError> for CliError {
    fn from(e: IneqError) -> Self {
        match e {
            IneqError::UnknownSuite(_) => CliError::Config(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
