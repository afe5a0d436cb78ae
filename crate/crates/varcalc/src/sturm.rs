use std::sync::Arc;

use tsvar_solver::symmetric_eigen;
use tsvar_timescale::{GridFunction, TimeScale, TimeScaleError};

use crate::candidate::{full_values, grid_fn, window_fn};
use crate::error::{Result, VarError};

/// First eigenpair of `y^{delta delta} + q y^sigma + lambda y^sigma = 0`, `y(a) = y(b) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct SturmLiouville {
    pub lambda1: f64,
    /// Normalized so that the delta-integral of `(y^sigma)^2` is 1, with positive sum.
    pub y1: GridFunction,
    /// The quadratic functional evaluated at `y1`.
    pub j_value: f64,
}

fn q_values(ts: &TimeScale, q: &GridFunction) -> Result<Vec<f64>> {
    (0..ts.len() - 1)
        .map(|i| q.at_index(i).ok_or_else(|| VarError::TimeScale(TimeScaleError::OutsideDomain(ts.point(i)))))
        .collect()
}

/// `J[y] = sum mu ((y^delta)^2 - q (y^sigma)^2)` over `[a, b)`.
pub fn sturm_functional(q: &GridFunction, y: &GridFunction) -> Result<f64> {
    let ts = y.scale();
    let (qv, v) = (q_values(ts, q)?, full_values(ts, y)?);
    Ok((0..ts.len() - 1)
        .map(|i| {
            let mu = ts.mu_at(i);
            let d = (v[i + 1] - v[i]) / mu;
            mu * (d * d - qv[i] * v[i + 1] * v[i + 1])
        })
        .sum())
}

/// `y^{delta delta} + (q + lambda) y^sigma` on T^kappa^2.
pub fn sturm_residual(q: &GridFunction, lambda: f64, y: &GridFunction) -> Result<GridFunction> {
    let ts = y.scale();
    let (qv, v) = (q_values(ts, q)?, full_values(ts, y)?);
    let d: Vec<f64> = (0..ts.len() - 1).map(|i| (v[i + 1] - v[i]) / ts.mu_at(i)).collect();
    let r = (0..ts.len() - 2).map(|i| (d[i + 1] - d[i]) / ts.mu_at(i) + (qv[i] + lambda) * v[i + 1]).collect();
    window_fn(ts, r)
}

/// Smallest eigenvalue of the pencil of the quadratic forms `J` and `I = sum mu (y^sigma)^2`.
pub fn sturm_liouville_first(ts: &Arc<TimeScale>, q: &GridFunction) -> Result<SturmLiouville> {
    let n = ts.len() - 1;
    if ts.len() < 4 {
        return Err(VarError::GridTooSmall { needed: 4, got: ts.len() });
    }
    let qv = q_values(ts, q)?;
    let m = n - 1;
    // Unknown k is y_{k+1}.
    let mut k = vec![vec![0.0; m]; m];
    for i in 0..n {
        let w = 1.0 / ts.mu_at(i);
        let (lo, hi) = (i.checked_sub(1), (i < m).then_some(i));
        if let Some(a) = lo {
            k[a][a] += w;
        }
        if let Some(b) = hi {
            k[b][b] += w - ts.mu_at(i) * qv[i];
        }
        if let (Some(a), Some(b)) = (lo, hi) {
            k[a][b] -= w;
            k[b][a] -= w;
        }
    }
    let inv_sqrt_mass: Vec<f64> = (0..m).map(|j| 1.0 / ts.mu_at(j).sqrt()).collect();
    let a: Vec<Vec<f64>> = (0..m)
        .map(|i| (0..m).map(|j| inv_sqrt_mass[i] * k[i][j] * inv_sqrt_mass[j]).collect())
        .collect();
    let eig = symmetric_eigen(&a)?;
    let lambda1 = eig.values[0];
    let mut z: Vec<f64> = eig.vectors[0].iter().zip(&inv_sqrt_mass).map(|(x, s)| x * s).collect();
    if z.iter().sum::<f64>() < 0.0 {
        z.iter_mut().for_each(|x| *x = -*x);
    }
    let mut values = Vec::with_capacity(n + 1);
    values.push(0.0);
    values.extend(z);
    values.push(0.0);
    let y1 = grid_fn(ts, values)?;
    let j_value = sturm_functional(q, &y1)?;
    Ok(SturmLiouville { lambda1, y1, j_value })
}
