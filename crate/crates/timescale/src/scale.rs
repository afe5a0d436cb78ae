use crate::error::{Result, TimeScaleError};

/// Relative tolerance used to snap a real number onto a grid point.
pub const SNAP_TOL: f64 = 1e-9;
const KIND_TOL: f64 = 1e-12;

/// How the grid was generated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScaleKind {
    /// Constant step `h`.
    Uniform { h: f64 },
    /// Constant ratio `q > 1` between consecutive points.
    Geometric { q: f64 },
    /// Arbitrary strictly increasing points.
    Explicit,
}

/// A finite, strictly increasing set of isolated points.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeScale {
    points: Vec<f64>,
    kind: ScaleKind,
}

impl TimeScale {
    /// Builds an explicit time scale from strictly increasing points.
    pub fn explicit(points: Vec<f64>) -> Result<Self> {
        check_points(&points)?;
        Ok(Self { points, kind: ScaleKind::Explicit })
    }

    /// The grid `a, a+h, ..., b`. `(b-a)/h` must be an integer within snap tolerance.
    pub fn uniform(a: f64, b: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(TimeScaleError::InvalidGrid(format!("uniform({a}, {b}, {h})")));
        }
        let steps = (b - a) / h;
        let n = steps.round();
        if n < 1.0 || (steps - n).abs() > SNAP_TOL * n.max(1.0) {
            return Err(TimeScaleError::InvalidGrid(format!(
                "(b - a)/h = {steps} is not a positive integer"
            )));
        }
        let n = n as usize;
        let points: Vec<f64> = (0..=n).map(|i| if i == n { b } else { a + i as f64 * h }).collect();
        check_points(&points)?;
        Ok(Self { points, kind: ScaleKind::Uniform { h } })
    }

    /// The grid `q^kmin, ..., q^kmax`.
    pub fn geometric(q: f64, kmin: i32, kmax: i32) -> Result<Self> {
        Self::geometric_scaled(1.0, q, kmin, kmax)
    }

    /// The grid `c q^kmin, ..., c q^kmax` for a positive scaling `c`.
    pub fn geometric_scaled(c: f64, q: f64, kmin: i32, kmax: i32) -> Result<Self> {
        if !(q > 1.0) || !(c > 0.0) || kmax <= kmin {
            return Err(TimeScaleError::InvalidGrid(format!(
                "geometric(c={c}, q={q}, {kmin}..={kmax})"
            )));
        }
        let points: Vec<f64> = (kmin..=kmax).map(|k| c * q.powi(k)).collect();
        check_points(&points)?;
        Ok(Self { points, kind: ScaleKind::Geometric { q } })
    }

    /// Tags `points` with the kind they satisfy, checking the kind's invariant.
    pub fn with_kind(points: Vec<f64>, kind: ScaleKind) -> Result<Self> {
        check_points(&points)?;
        let ok = match kind {
            ScaleKind::Explicit => true,
            ScaleKind::Uniform { h } => points
                .windows(2)
                .all(|w| ((w[1] - w[0]) - h).abs() <= KIND_TOL * h.abs().max(w[1].abs())),
            ScaleKind::Geometric { q } => {
                points[0] > 0.0 && points.windows(2).all(|w| (w[1] / w[0] - q).abs() <= KIND_TOL * q)
            }
        };
        if !ok {
            return Err(TimeScaleError::InvalidGrid(format!("points do not match {kind:?}")));
        }
        Ok(Self { points, kind })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn kind(&self) -> ScaleKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false: a time scale has at least two points.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.points[0]
    }

    pub fn max(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    pub fn point(&self, i: usize) -> f64 {
        self.points[i]
    }

    /// Index of the grid point within snap tolerance of `t`.
    pub fn index_of(&self, t: f64) -> Result<usize> {
        if !t.is_finite() {
            return Err(TimeScaleError::NotOnGrid(t));
        }
        let i = self.points.partition_point(|&p| p < t);
        let mut best: Option<(usize, f64)> = None;
        for j in [i.wrapping_sub(1), i] {
            if let Some(&p) = self.points.get(j) {
                let d = (p - t).abs();
                if d <= SNAP_TOL * p.abs().max(1.0) && best.is_none_or(|(_, bd)| d < bd) {
                    best = Some((j, d));
                }
            }
        }
        best.map(|(j, _)| j).ok_or(TimeScaleError::NotOnGrid(t))
    }

    /// Snaps `t` onto the grid.
    pub fn snap(&self, t: f64) -> Result<f64> {
        self.index_of(t).map(|i| self.points[i])
    }

    /// Index of the forward jump; the last index maps to itself.
    pub fn sigma_index(&self, i: usize) -> usize {
        (i + 1).min(self.points.len() - 1)
    }

    /// Index of the backward jump; the first index maps to itself.
    pub fn rho_index(&self, i: usize) -> usize {
        i.saturating_sub(1)
    }

    /// Graininess at index `i`.
    pub fn mu_at(&self, i: usize) -> f64 {
        self.points[self.sigma_index(i)] - self.points[i]
    }

    /// Backward graininess at index `i`.
    pub fn nu_at(&self, i: usize) -> f64 {
        self.points[i] - self.points[self.rho_index(i)]
    }

    /// Forward jump operator.
    pub fn sigma(&self, t: f64) -> Result<f64> {
        let i = self.index_of(t)?;
        Ok(self.points[self.sigma_index(i)])
    }

    /// Backward jump operator.
    pub fn rho(&self, t: f64) -> Result<f64> {
        let i = self.index_of(t)?;
        Ok(self.points[self.rho_index(i)])
    }

    /// Graininess `sigma(t) - t`.
    pub fn mu(&self, t: f64) -> Result<f64> {
        self.index_of(t).map(|i| self.mu_at(i))
    }

    /// Backward graininess `t - rho(t)`.
    pub fn nu_backward(&self, t: f64) -> Result<f64> {
        self.index_of(t).map(|i| self.nu_at(i))
    }

    /// Coefficients `(a1, a0)` with `sigma(t) = a1 t + a0` when the kind guarantees it.
    pub fn hypothesis_h(&self) -> Option<(f64, f64)> {
        match self.kind {
            ScaleKind::Uniform { h } => Some((1.0, h)),
            ScaleKind::Geometric { q } => Some((q, 0.0)),
            ScaleKind::Explicit => None,
        }
    }

    /// The sub-grid made of points `lo..=hi`, keeping the kind.
    pub fn slice(&self, lo: usize, hi: usize) -> Result<Self> {
        if hi >= self.points.len() || hi <= lo {
            return Err(TimeScaleError::GridTooSmall { needed: 2, got: hi.saturating_sub(lo) + 1 });
        }
        Ok(Self { points: self.points[lo..=hi].to_vec(), kind: self.kind })
    }
}

fn check_points(points: &[f64]) -> Result<()> {
    if points.len() < 2 {
        return Err(TimeScaleError::GridTooSmall { needed: 2, got: points.len() });
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(TimeScaleError::InvalidGrid("non-finite point".into()));
    }
    if points.windows(2).any(|w| w[1] <= w[0]) {
        return Err(TimeScaleError::InvalidGrid("points must be strictly increasing".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_sigma_steps_forward() {
        let ts = TimeScale::uniform(0.0, 1.0, 0.25).unwrap();
        assert_eq!(ts.sigma(0.5).unwrap(), 0.75);
        assert_eq!(ts.sigma(1.0).unwrap(), 1.0);
        assert_eq!(ts.rho(0.0).unwrap(), 0.0);
        assert_eq!(ts.mu(1.0).unwrap(), 0.0);
        assert_eq!(ts.mu(0.25).unwrap(), 0.25);
    }

    #[test]
    fn geometric_sigma_is_q_times_t() {
        let ts = TimeScale::geometric(2.0, 0, 3).unwrap();
        assert_eq!(ts.sigma(4.0).unwrap(), 8.0);
        assert_eq!(ts.mu(4.0).unwrap(), 4.0);
        assert_eq!(ts.hypothesis_h(), Some((2.0, 0.0)));
    }

    #[test]
    fn off_grid_points_are_rejected() {
        let ts = TimeScale::uniform(0.0, 1.0, 0.25).unwrap();
        assert_eq!(ts.sigma(0.3), Err(TimeScaleError::NotOnGrid(0.3)));
        assert_eq!(ts.index_of(0.5 + 1e-12).unwrap(), 2);
    }

    #[test]
    fn invalid_grids() {
        assert!(TimeScale::explicit(vec![0.0]).is_err());
        assert!(TimeScale::explicit(vec![0.0, 0.0]).is_err());
        assert!(TimeScale::uniform(0.0, 1.0, 0.3).is_err());
        assert!(TimeScale::geometric(1.0, 0, 3).is_err());
        assert!(TimeScale::with_kind(vec![0.0, 1.0, 3.0], ScaleKind::Uniform { h: 1.0 }).is_err());
    }

    #[test]
    fn thirtieths_snap_exactly() {
        let ts = TimeScale::uniform(0.0, 1.0, 1.0 / 30.0).unwrap();
        assert_eq!(ts.len(), 31);
        assert_eq!(ts.max(), 1.0);
        assert_eq!(ts.index_of(0.5).unwrap(), 15);
    }
}
