use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DslError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("{func} is undefined or non-differentiable at {arg}")]
    Domain { func: &'static str, arg: f64 },
}

pub type Result<T> = std::result::Result<T, DslError>;
