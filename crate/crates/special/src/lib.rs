//! Special functions for time-scale calculus: Gamma, the h-factorial,
//! generalized polynomials `H_k` and the time-scale exponential `e_p`.

mod error;
mod exponential;
mod gamma;
mod poly;

pub use error::{Result, SpecialError};
pub use exponential::{
    is_positively_regressive, is_regressive, ts_exponential, ts_exponential_fn, REGRESSIVE_TOL,
};
pub use gamma::{gamma_fn, h_factorial, is_pole, ln_gamma, POLE_TOL};
pub use poly::{generalized_polynomial_h, generalized_polynomials};
