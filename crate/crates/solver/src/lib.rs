//! Numerical plumbing shared by the variational solvers: multi-start damped
//! Newton, cyclic Jacobi for symmetric matrices, adaptive Simpson quadrature
//! and inversion of monotone scalar maps.

mod error;
mod jacobi;
mod multistart;
mod newton;
mod quad;
mod root;

pub use error::{Result, SolveError};
pub use jacobi::{symmetric_eigen, SymmetricEigen};
pub use multistart::{multi_start, start_points, MultiStartConfig, MultiStartReport, THREADS_ENV};
pub use newton::{jacobian, newton, rcond, NewtonConfig, Root};
pub use quad::adaptive_simpson;
pub use root::{bracket_above, invert_increasing};
