use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolveError {
    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("singular Jacobian at iteration {iteration}")]
    SingularJacobian { iteration: usize },
    #[error("residual evaluation failed: {0}")]
    Residual(String),
    #[error("residual has {got} rows for {unknowns} unknowns")]
    ShapeMismatch { unknowns: usize, got: usize },
    #[error("quadrature failed on [{a}, {b}]")]
    QuadratureFailure { a: f64, b: f64 },
    #[error("target {target} not bracketed by [{lo}, {hi}]")]
    RootNotBracketed { target: f64, lo: f64, hi: f64 },
    #[error("matrix is not square and symmetric")]
    NotSymmetric,
}

pub type Result<T> = std::result::Result<T, SolveError>;
