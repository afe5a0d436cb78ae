//! Variational calculus on time scales: Euler-Lagrange and Legendre conditions,
//! higher-order and isoperimetric problems, the Sturm-Liouville eigenproblem and
//! closed-form direct methods.

mod candidate;
mod classical;
mod direct;
mod error;
mod higher;
mod isoperimetric;
mod sturm;

pub use candidate::{roots_or_error, sort_candidates, ExtremalCandidate, LegendreReport};
pub use classical::{el_residual, functional_value, legendre_check, solve_el, star, VariationalProblem, LEGENDRE_TOL};
pub use direct::{
    DirectInput, DirectMethod, DirectRegistry, DirectSolution, EntropyMethod, ExpMethod, Extremum, Phi, PowerMethod,
};
pub use error::{Result, VarError};
pub use higher::{
    delta_pow_at, el_residual_higher, functional_value_higher, solve_el_higher, Catalog, FirstOrder,
    HigherOrderLagrangian, HigherOrderProblem, QuadraticLagrangian,
};
pub use isoperimetric::{solve_isoperimetric, IsoperimetricProblem, ABNORMAL_RCOND, ABNORMAL_TOL};
pub use sturm::{sturm_functional, sturm_liouville_first, sturm_residual, SturmLiouville};
pub use tsvar_solver::{MultiStartConfig, NewtonConfig};
