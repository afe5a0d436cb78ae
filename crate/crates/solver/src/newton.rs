use std::fmt::Display;

use nalgebra::{DMatrix, DVector};

use crate::error::{Result, SolveError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonConfig {
    /// Acceptance threshold on the max-norm of the residual.
    pub tol: f64,
    pub max_iter: usize,
    pub max_halvings: usize,
    /// Smallest accepted `rcond` of the Jacobian at the root. `None` skips the check.
    pub min_rcond: Option<f64>,
}

impl Default for NewtonConfig {
    fn default() -> Self {
        NewtonConfig { tol: 1e-9, max_iter: 200, max_halvings: 30, min_rcond: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Root {
    pub x: Vec<f64>,
    /// Max-norm of the residual at `x`.
    pub residual_norm: f64,
    pub iterations: usize,
}

fn inf_norm(r: &[f64]) -> f64 {
    r.iter().fold(0.0, |m, x| m.max(x.abs()))
}

fn two_norm(r: &[f64]) -> f64 {
    r.iter().map(|x| x * x).sum::<f64>().sqrt()
}

fn call<F, E>(f: &F, x: &[f64]) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> std::result::Result<Vec<f64>, E>,
    E: Display,
{
    let r = f(x).map_err(|e| SolveError::Residual(e.to_string()))?;
    if r.len() != x.len() {
        return Err(SolveError::ShapeMismatch { unknowns: x.len(), got: r.len() });
    }
    if r.iter().any(|v| !v.is_finite()) {
        return Err(SolveError::Residual("non-finite residual".into()));
    }
    Ok(r)
}

/// Forward-difference Jacobian; falls back to a backward step where the forward one fails.
pub fn jacobian<F, E>(f: &F, x: &[f64], r: &[f64]) -> Result<DMatrix<f64>>
where
    F: Fn(&[f64]) -> std::result::Result<Vec<f64>, E>,
    E: Display,
{
    let n = x.len();
    let mut jac = DMatrix::zeros(n, n);
    let mut xp = x.to_vec();
    for j in 0..n {
        let step = f64::EPSILON.sqrt() * x[j].abs().max(1.0);
        xp[j] = x[j] + step;
        let (rp, s) = match call(f, &xp) {
            Ok(rp) => (rp, step),
            Err(_) => {
                xp[j] = x[j] - step;
                (call(f, &xp)?, -step)
            }
        };
        for i in 0..n {
            jac[(i, j)] = (rp[i] - r[i]) / s;
        }
        xp[j] = x[j];
    }
    Ok(jac)
}

/// Smallest singular value over `max(largest singular value, 1)`.
///
/// The floor of 1 keeps a Jacobian that is small in every direction from looking
/// well conditioned.
pub fn rcond(jac: &DMatrix<f64>) -> f64 {
    let sv = jac.clone().singular_values();
    sv.min() / sv.max().max(1.0)
}

/// Damped Newton iteration for `f(x) = 0` with backtracking on the residual 2-norm.
pub fn newton<F, E>(f: &F, x0: &[f64], cfg: &NewtonConfig) -> Result<Root>
where
    F: Fn(&[f64]) -> std::result::Result<Vec<f64>, E>,
    E: Display,
{
    let mut x = x0.to_vec();
    let mut r = call(f, &x)?;
    let target = cfg.tol * 0.01;
    let mut iterations = 0;
    while iterations < cfg.max_iter && inf_norm(&r) > target {
        iterations += 1;
        let jac = jacobian(f, &x, &r)?;
        let rhs = -DVector::from_column_slice(&r);
        let lu = jac.lu();
        let dx = lu.solve(&rhs).ok_or(SolveError::SingularJacobian { iteration: iterations })?;
        if dx.iter().any(|v| !v.is_finite()) {
            return Err(SolveError::SingularJacobian { iteration: iterations });
        }
        let norm0 = two_norm(&r);
        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..=cfg.max_halvings {
            let trial: Vec<f64> = x.iter().zip(dx.iter()).map(|(a, d)| a + lambda * d).collect();
            if let Ok(rt) = call(f, &trial) {
                if two_norm(&rt) < norm0 {
                    accepted = Some((trial, rt));
                    break;
                }
            }
            lambda *= 0.5;
        }
        match accepted {
            Some((xn, rn)) => {
                x = xn;
                r = rn;
            }
            None => break,
        }
    }
    let residual_norm = inf_norm(&r);
    if residual_norm > cfg.tol {
        return Err(SolveError::NoConvergence { iterations, residual: residual_norm });
    }
    if let Some(min) = cfg.min_rcond {
        if !x.is_empty() && rcond(&jacobian(f, &x, &r)?) < min {
            return Err(SolveError::SingularJacobian { iteration: iterations });
        }
    }
    Ok(Root { x, residual_norm, iterations })
}

#[cfg(test)]
mod tests {
    use super::*;

    type R = std::result::Result<Vec<f64>, String>;

    #[test]
    fn solves_a_nonlinear_pair() {
        let f = |x: &[f64]| -> R { Ok(vec![x[0] * x[0] + x[1] * x[1] - 4.0, x[0] - x[1]]) };
        let root = newton(&f, &[1.0, 0.5], &NewtonConfig::default()).unwrap();
        let s = 2f64.sqrt();
        assert!((root.x[0] - s).abs() < 1e-10 && (root.x[1] - s).abs() < 1e-10);
        assert!(root.residual_norm <= 1e-9);
    }

    #[test]
    fn damping_rescues_a_far_start() {
        let f = |x: &[f64]| -> R { Ok(vec![x[0].atan()]) };
        let root = newton(&f, &[3.0], &NewtonConfig::default()).unwrap();
        assert!(root.x[0].abs() < 1e-10);
    }

    #[test]
    fn reports_singular_and_failed_solves() {
        let f = |x: &[f64]| -> R { Ok(vec![x[0] + x[1] - 1.0, 2.0 * x[0] + 2.0 * x[1] - 2.0]) };
        assert!(matches!(
            newton(&f, &[0.0, 0.0], &NewtonConfig::default()),
            Err(SolveError::SingularJacobian { .. })
        ));
        let g = |x: &[f64]| -> R { Ok(vec![x[0] * x[0] + 1.0]) };
        assert!(matches!(newton(&g, &[0.5], &NewtonConfig::default()), Err(SolveError::NoConvergence { .. })));
        let h = |_: &[f64]| -> R { Err("bad".into()) };
        assert!(matches!(newton(&h, &[0.5], &NewtonConfig::default()), Err(SolveError::Residual(_))));
    }

    #[test]
    fn rank_check_flags_a_degenerate_root() {
        // Every point of the line x0 = 1 is a root; the Jacobian has rank one there.
        let f = |x: &[f64]| -> R { Ok(vec![(x[0] - 1.0) * (1.0 + x[1] * x[1]), (x[0] - 1.0) * x[1]]) };
        let cfg = NewtonConfig { min_rcond: Some(1e-7), ..NewtonConfig::default() };
        let res = newton(&f, &[1.3, 0.4], &cfg);
        assert!(matches!(res, Err(SolveError::SingularJacobian { .. })), "{res:?}");
    }
}
