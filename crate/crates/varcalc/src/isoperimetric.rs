use std::sync::Arc;

use tsvar_dsl::{Jet2, Lagrangian, Point};
use tsvar_solver::{multi_start, start_points, MultiStartConfig};

use crate::candidate::{grid_fn, roots_or_error, sort_candidates, ExtremalCandidate};
use crate::classical::{legendre_check, residual_values, value_sum, VariationalProblem};
use crate::error::{Result, VarError};

/// Default rank threshold for the a-posteriori abnormality check.
pub const ABNORMAL_RCOND: f64 = 1e-8;

/// A root whose constraint Euler-Lagrange residual is below this is an extremal of the
/// constraint functional, where no multiplier rule applies.
pub const ABNORMAL_TOL: f64 = 1e-4;

/// Minimize the functional of `base` subject to `sum mu g(t, y^sigma, y^delta) = level`.
#[derive(Clone)]
pub struct IsoperimetricProblem {
    pub base: VariationalProblem,
    pub constraint: Arc<dyn Lagrangian>,
    pub level: f64,
}

/// `L - lambda g`.
struct WithMultiplier {
    l: Arc<dyn Lagrangian>,
    g: Arc<dyn Lagrangian>,
    lambda: f64,
}

impl Lagrangian for WithMultiplier {
    fn value(&self, p: Point) -> tsvar_dsl::Result<f64> {
        Ok(self.l.value(p)? - self.lambda * self.g.value(p)?)
    }
    fn jet(&self, p: Point) -> tsvar_dsl::Result<Jet2> {
        Ok(self.l.jet(p)? - Jet2::constant(self.lambda) * self.g.jet(p)?)
    }
}

impl IsoperimetricProblem {
    fn augmented(&self, lambda: f64) -> VariationalProblem {
        let l = WithMultiplier { l: self.base.lagrangian.clone(), g: self.constraint.clone(), lambda };
        VariationalProblem { lagrangian: Arc::new(l), ..self.base.clone() }
    }

    fn residual(&self, x: &[f64]) -> Result<Vec<f64>> {
        let (interior, lambda) = x.split_at(x.len() - 1);
        let ts = &self.base.scale;
        let y = self.base.assemble(interior);
        let f = self.augmented(lambda[0]);
        let mut r = residual_values(ts, f.lagrangian.as_ref(), &y)?;
        r.push(value_sum(ts, self.constraint.as_ref(), &y)? - self.level);
        Ok(r)
    }

    /// True when the constraint functional is constant on admissible grids and its
    /// Euler-Lagrange operator vanishes, so the multiplier is undetermined.
    fn null_constraint(&self, cfg: &MultiStartConfig) -> Result<Option<f64>> {
        let ts = &self.base.scale;
        let probe = MultiStartConfig { starts: 4, extra_starts: Vec::new(), ..cfg.clone() };
        let mut value = None;
        for x in start_points(ts.len() - 2, &probe) {
            let y = self.base.assemble(&x);
            let el = residual_values(ts, self.constraint.as_ref(), &y)?;
            let v = value_sum(ts, self.constraint.as_ref(), &y)?;
            let scale = 1.0 + v.abs();
            if el.iter().any(|e| e.abs() > 1e-12 * scale) {
                return Ok(None);
            }
            match value {
                None => value = Some(v),
                Some(v0) if (v - v0).abs() > 1e-12 * scale => return Ok(None),
                _ => {}
            }
        }
        Ok(value)
    }
}

/// Multi-start Newton on the Euler-Lagrange system of `L - lambda g` plus the constraint row.
pub fn solve_isoperimetric(p: &IsoperimetricProblem, cfg: &MultiStartConfig) -> Result<Vec<ExtremalCandidate>> {
    let ts = &p.base.scale;
    if let Some(v) = p.null_constraint(cfg)? {
        if (v - p.level).abs() > cfg.newton.tol {
            return Err(VarError::ConstraintInfeasible(format!("constraint is identically {v}, not {}", p.level)));
        }
        let mut out = crate::classical::solve_el(&p.base, cfg)?;
        out.iter_mut().for_each(|c| c.multiplier = Some(0.0));
        return Ok(out);
    }
    let f = |x: &[f64]| p.residual(x);
    // Abnormal problems have a rank-deficient Jacobian at every root.
    let mut cfg = cfg.clone();
    cfg.newton.min_rcond = cfg.newton.min_rcond.or(Some(ABNORMAL_RCOND));
    let report = multi_start(ts.len() - 1, &f, &cfg);
    let roots = match roots_or_error(report) {
        Err(VarError::NoConvergence { attempts, last }) => {
            return Err(VarError::ConstraintInfeasible(format!("no start converged out of {attempts}; last failure: {last}")))
        }
        other => other?,
    };
    let mut out = Vec::with_capacity(roots.len());
    for root in roots {
        let (interior, lambda) = root.x.split_at(root.x.len() - 1);
        let values = p.base.assemble(interior);
        let el_g = residual_values(ts, p.constraint.as_ref(), &values)?;
        if el_g.iter().all(|e| e.abs() <= ABNORMAL_TOL) {
            continue;
        }
        let y = grid_fn(ts, values)?;
        out.push(ExtremalCandidate {
            legendre: Some(legendre_check(&p.augmented(lambda[0]), &y)?),
            functional_value: value_sum(ts, p.base.lagrangian.as_ref(), y.values())?,
            y,
            residual_norm: root.residual_norm,
            multiplier: Some(lambda[0]),
        });
    }
    if out.is_empty() {
        return Err(VarError::SingularJacobian);
    }
    sort_candidates(&mut out);
    Ok(out)
}
