use std::sync::Arc;

use tsvar_timescale::{GridFunction, TimeScale};

use crate::error::{IneqError, Result};

/// Forward recursion for `x^Delta(t) = F(t, x(t), int_a^t K(t, s, x(s)) Delta s)`, `x(a) = A`.
pub fn solve_integrodynamic(
    ts: &Arc<TimeScale>,
    f: &dyn Fn(f64, f64, f64) -> f64,
    k: &dyn Fn(f64, f64, f64) -> f64,
    a_value: f64,
) -> Result<GridFunction> {
    let n = ts.len();
    let mut x = Vec::with_capacity(n);
    x.push(a_value);
    for i in 0..n - 1 {
        let t = ts.point(i);
        let z: f64 = (0..i).map(|s| ts.mu_at(s) * k(t, ts.point(s), x[s])).sum();
        let next = x[i] + ts.mu_at(i) * f(t, x[i], z);
        if !next.is_finite() {
            return Err(IneqError::NonFinite(ts.point(i + 1)));
        }
        x.push(next);
    }
    Ok(GridFunction::new(ts.clone(), x)?)
}
