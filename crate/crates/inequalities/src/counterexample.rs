use tsvar_solver::adaptive_simpson;

use crate::error::{IneqError, Result};

/// Values of `I[y] = int_0^1 ln(phi y') dx` for `phi(x) = x + 1`, `y(x) = x`, against the claimed maximum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Counterexample {
    /// `I[y]` by quadrature.
    pub value: f64,
    /// `-ln(C)`, `C = int_0^1 ds / phi(s)` by quadrature.
    pub claimed_max: f64,
    /// `2 ln 2 - 1`.
    pub value_closed: f64,
    /// `-ln(ln 2)`.
    pub claimed_max_closed: f64,
}

impl Counterexample {
    /// The claimed maximum is exceeded.
    pub fn refutes(&self) -> bool {
        self.value > self.claimed_max
    }
}

pub fn log_functional_counterexample() -> Result<Counterexample> {
    let quad = |f: &dyn Fn(f64) -> f64| adaptive_simpson(f, 0.0, 1.0, 1e-14).map_err(|_| IneqError::QuadratureFailure { a: 0.0, b: 1.0 });
    let value = quad(&|x| ((x + 1.0) * 1.0).ln())?;
    let c = quad(&|s| 1.0 / (s + 1.0))?;
    let ln2 = std::f64::consts::LN_2;
    Ok(Counterexample { value, claimed_max: -c.ln(), value_closed: 2.0 * ln2 - 1.0, claimed_max_closed: -ln2.ln() })
}
