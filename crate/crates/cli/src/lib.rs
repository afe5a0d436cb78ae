//! Command-line front end: problem files, solver commands, reproductions and
//! certification runs.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod repro;

pub use commands::{direct, frac_solve, ineq_check, sturm, var_solve, DirectArgs, RunOptions, RunReport};
pub use config::{parse_number, Config, ProblemConfig, ProblemSpec, ScaleSpec, SolverSpec};
pub use error::{CliError, Result};
pub use repro::{execute, Check, Outcome, ReproRegistry, Reproduction};
