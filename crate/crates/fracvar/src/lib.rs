//! Discrete fractional sums and differences on hZ, fractional summation by parts,
//! and the fractional variational solver with the Legendre filter.

mod error;
mod grid;
mod kernel;
mod ops;
mod problem;

pub use error::{FracError, Result};
pub use grid::{FracGrid, FracOrders};
pub use kernel::KernelTable;
pub use ops::{frac_sbp_residual, left_frac_diff, left_frac_sum, right_frac_diff, right_frac_sum};
pub use problem::{
    el_residual_frac, functional_value, legendre_frac_check, natural_bc_residuals, solve_frac_el, FracProblem,
    NaturalResiduals, LEGENDRE_TOL,
};
pub use tsvar_varcalc::{ExtremalCandidate, LegendreReport, MultiStartConfig, NewtonConfig};
