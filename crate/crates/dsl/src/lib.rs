//! Lagrangian expressions in `(t, u, v, w)`: parsing and evaluation with
//! value, gradient and Hessian in the active variables `(u, v, w)`.

mod ast;
mod error;
mod eval;
mod jet;
mod parser;

pub use ast::{BinOp, Constant, Expr, Func, Var};
pub use error::{DslError, Result};
pub use eval::{eval, eval_jet2, Lagrangian, Point};
pub use jet::{Jet2, Scalar};
pub use parser::parse;
