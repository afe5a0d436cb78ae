use std::sync::Arc;

use tsvar_dsl::{Jet2, Lagrangian, Point};
use tsvar_solver::{multi_start, MultiStartConfig};
use tsvar_timescale::{GridFunction, TimeScale};

use crate::candidate::{full_values, grid_fn, roots_or_error, sort_candidates, window_fn};
use crate::candidate::{ExtremalCandidate, LegendreReport};
use crate::error::{Result, VarError};

/// Verdict threshold of the classical Legendre test.
pub const LEGENDRE_TOL: f64 = 1e-10;

/// Minimize the sum over `[a, b)` of `mu L(t, y(sigma t), y_delta(t))` with `y(a) = A`, `y(b) = B`.
#[derive(Clone)]
pub struct VariationalProblem {
    pub scale: Arc<TimeScale>,
    pub lagrangian: Arc<dyn Lagrangian>,
    pub a_value: f64,
    pub b_value: f64,
}

impl VariationalProblem {
    pub fn new(scale: Arc<TimeScale>, lagrangian: Arc<dyn Lagrangian>, a_value: f64, b_value: f64) -> Result<Self> {
        if scale.len() < 3 {
            return Err(VarError::GridTooSmall { needed: 3, got: scale.len() });
        }
        Ok(VariationalProblem { scale, lagrangian, a_value, b_value })
    }

    /// Grid values from interior unknowns and the boundary values.
    pub fn assemble(&self, interior: &[f64]) -> Vec<f64> {
        let mut y = Vec::with_capacity(interior.len() + 2);
        y.push(self.a_value);
        y.extend_from_slice(interior);
        y.push(self.b_value);
        y
    }
}

/// `(t, y(sigma t), y_delta(t))` at grid index `i < n`.
pub(crate) fn point_at(ts: &TimeScale, y: &[f64], i: usize) -> Point {
    Point::new(ts.point(i), y[i + 1], (y[i + 1] - y[i]) / ts.mu_at(i), 0.0)
}

pub(crate) fn jets(ts: &TimeScale, l: &dyn Lagrangian, y: &[f64]) -> Result<Vec<Jet2>> {
    (0..ts.len() - 1).map(|i| Ok(l.jet(point_at(ts, y, i))?)).collect()
}

/// `L_u - (L_v)^delta` at every point of T^kappa^2.
pub(crate) fn residual_values(ts: &TimeScale, l: &dyn Lagrangian, y: &[f64]) -> Result<Vec<f64>> {
    let j = jets(ts, l, y)?;
    Ok((0..ts.len() - 2).map(|i| j[i].l_u() - (j[i + 1].l_v() - j[i].l_v()) / ts.mu_at(i)).collect())
}

pub(crate) fn value_sum(ts: &TimeScale, l: &dyn Lagrangian, y: &[f64]) -> Result<f64> {
    let mut s = 0.0;
    for i in 0..ts.len() - 1 {
        s += ts.mu_at(i) * l.value(point_at(ts, y, i))?;
    }
    Ok(s)
}

/// `x* = 1/x`, with `0* = 0`.
pub fn star(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        1.0 / x
    }
}

/// Euler-Lagrange residual `L_u - (L_v)^delta` on T^kappa^2.
pub fn el_residual(p: &VariationalProblem, y: &GridFunction) -> Result<GridFunction> {
    let v = full_values(&p.scale, y)?;
    window_fn(&p.scale, residual_values(&p.scale, p.lagrangian.as_ref(), v)?)
}

/// Margins `L_vv + mu (2 L_uv + mu L_uu + (mu o sigma)* L_vv o sigma)` on T^kappa^2.
pub fn legendre_check(p: &VariationalProblem, y: &GridFunction) -> Result<LegendreReport> {
    let ts = &p.scale;
    let j = jets(ts, p.lagrangian.as_ref(), full_values(ts, y)?)?;
    let margins = (0..ts.len() - 2)
        .map(|i| {
            let mu = ts.mu_at(i);
            j[i].l_vv() + mu * (2.0 * j[i].l_uv() + mu * j[i].l_uu() + star(ts.mu_at(i + 1)) * j[i + 1].l_vv())
        })
        .collect();
    Ok(LegendreReport::from_margins(margins, LEGENDRE_TOL))
}

/// Delta-integral of the Lagrangian along `y`.
pub fn functional_value(p: &VariationalProblem, y: &GridFunction) -> Result<f64> {
    value_sum(&p.scale, p.lagrangian.as_ref(), full_values(&p.scale, y)?)
}

pub(crate) fn candidate(p: &VariationalProblem, values: Vec<f64>, residual_norm: f64, multiplier: Option<f64>) -> Result<ExtremalCandidate> {
    let y = grid_fn(&p.scale, values)?;
    Ok(ExtremalCandidate {
        legendre: Some(legendre_check(p, &y)?),
        functional_value: functional_value(p, &y)?,
        y,
        residual_norm,
        multiplier,
    })
}

/// Multi-start Newton on the Euler-Lagrange system for the interior values.
pub fn solve_el(p: &VariationalProblem, cfg: &MultiStartConfig) -> Result<Vec<ExtremalCandidate>> {
    let ts = &p.scale;
    let f = |x: &[f64]| residual_values(ts, p.lagrangian.as_ref(), &p.assemble(x));
    let roots = roots_or_error(multi_start(ts.len() - 2, &f, cfg))?;
    let mut out = roots
        .into_iter()
        .map(|r| candidate(p, p.assemble(&r.x), r.residual_norm, None))
        .collect::<Result<Vec<_>>>()?;
    sort_candidates(&mut out);
    Ok(out)
}
