//! Dynamic inequalities on time scales: Gronwall-type bounds (linear, comparison,
//! nonlinear, two-variable), diamond-alpha Jensen, Holder, Cauchy-Schwarz and
//! Minkowski certifiers, the integrodynamic forward solver and randomized
//! certification suites.

mod counterexample;
mod diamond;
mod error;
mod gronwall;
mod integro;
mod nonlinear;
mod report;
mod suites;
mod two_d;

pub use counterexample::{log_functional_counterexample, Counterexample};
pub use diamond::{cauchy_schwarz_certify, holder_certify, jensen_certify, minkowski_certify};
pub use error::{IneqError, Result};
pub use gronwall::{comparison_bound, gronwall_bound};
pub use integro::solve_integrodynamic;
pub use nonlinear::{nonlinear_gronwall_bound, NonlinearGrowthSpec, ScalarFn, PSI_TOL};
pub use report::{within, BoundReport, BOUND_TOL};
pub use suites::{random_scale, run_suite, CertificationSuite, SuiteReport, SuiteRegistry};
pub use two_d::{gronwall_2d_bound, gronwall_2d_power_bound, Fn2, Gronwall2d, Surface};
