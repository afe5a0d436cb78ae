use std::sync::Arc;

use tsvar_solver::{MultiStartReport, Root, SolveError};
use tsvar_timescale::{GridFunction, TimeScale};

use crate::error::{Result, VarError};

/// Pointwise Legendre margins and the verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendreReport {
    pub margins: Vec<f64>,
    pub ok: bool,
}

impl LegendreReport {
    pub fn from_margins(margins: Vec<f64>, tol: f64) -> Self {
        let ok = margins.iter().all(|m| *m >= -tol);
        LegendreReport { margins, ok }
    }
}

/// A converged stationary point of a discretized functional.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremalCandidate {
    pub y: GridFunction,
    /// Max-norm of the stationarity residual.
    pub residual_norm: f64,
    /// `None` when no second-order test applies to the problem kind.
    pub legendre: Option<LegendreReport>,
    pub functional_value: f64,
    /// Lagrange multiplier of an isoperimetric constraint.
    pub multiplier: Option<f64>,
}

impl ExtremalCandidate {
    pub fn legendre_ok(&self) -> Option<bool> {
        self.legendre.as_ref().map(|l| l.ok)
    }
}

/// Sorts by functional value; ties keep discovery order.
pub fn sort_candidates(c: &mut [ExtremalCandidate]) {
    c.sort_by(|a, b| a.functional_value.total_cmp(&b.functional_value));
}

/// Converged roots, or the aggregated failure when there are none.
pub fn roots_or_error(report: MultiStartReport) -> Result<Vec<Root>> {
    if !report.roots.is_empty() {
        return Ok(report.roots);
    }
    if report.all_singular() {
        return Err(VarError::SingularJacobian);
    }
    let last = report
        .failures
        .last()
        .map(|(_, e): &(usize, SolveError)| e.to_string())
        .unwrap_or_else(|| "no starts".into());
    Err(VarError::NoConvergence { attempts: report.attempts, last })
}

/// Values of `y` on every point of `ts`.
pub(crate) fn full_values<'a>(ts: &TimeScale, y: &'a GridFunction) -> Result<&'a [f64]> {
    if y.start() != 0 || y.len() != ts.len() || y.scale().points() != ts.points() {
        return Err(VarError::InvalidParameter(format!(
            "grid function must cover all {} grid points",
            ts.len()
        )));
    }
    Ok(y.values())
}

pub(crate) fn grid_fn(ts: &Arc<TimeScale>, values: Vec<f64>) -> Result<GridFunction> {
    Ok(GridFunction::new(ts.clone(), values)?)
}

pub(crate) fn window_fn(ts: &Arc<TimeScale>, values: Vec<f64>) -> Result<GridFunction> {
    Ok(GridFunction::on_window(ts.clone(), 0, values)?)
}
