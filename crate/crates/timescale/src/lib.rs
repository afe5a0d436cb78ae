//! Finite isolated time scales and the delta, nabla and diamond-alpha calculus on them.
//!
//! Every grid is a finite strictly increasing list of points, so derivatives are
//! difference quotients and integrals are exact weighted sums. The forward jump
//! of the last point and the backward jump of the first point are the points
//! themselves.

mod calculus;
mod error;
mod function;
mod scale;

pub use calculus::{
    delta_antiderivative, delta_derivative, delta_integral, diamond_integral, higher_delta_derivative,
    nabla_derivative, nabla_integral,
};
pub use error::{Result, TimeScaleError};
pub use function::GridFunction;
pub use scale::{ScaleKind, TimeScale, SNAP_TOL};
