use std::sync::Arc;

use crate::error::{Result, TimeScaleError};
use crate::scale::TimeScale;

/// Real values attached to a contiguous window of grid points.
///
/// A function on the whole scale has `start == 0` and one value per point.
/// Derivatives shrink the window (`T^kappa` drops the last point), while
/// jump operators keep referring to the full scale.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    scale: Arc<TimeScale>,
    start: usize,
    values: Vec<f64>,
}

impl GridFunction {
    /// A function on every point of `scale`.
    pub fn new(scale: Arc<TimeScale>, values: Vec<f64>) -> Result<Self> {
        if values.len() != scale.len() {
            return Err(TimeScaleError::LengthMismatch { values: values.len(), points: scale.len() });
        }
        Ok(Self { scale, start: 0, values })
    }

    /// A function on points `start..start + values.len()`.
    pub fn on_window(scale: Arc<TimeScale>, start: usize, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || start + values.len() > scale.len() {
            return Err(TimeScaleError::LengthMismatch {
                values: values.len(),
                points: scale.len().saturating_sub(start),
            });
        }
        Ok(Self { scale, start, values })
    }

    /// Samples `f` at every point of `scale`.
    pub fn from_fn(scale: Arc<TimeScale>, f: impl Fn(f64) -> f64) -> Self {
        let values = scale.points().iter().map(|&t| f(t)).collect();
        Self { scale, start: 0, values }
    }

    /// Samples `f` on points `start..end`.
    pub fn from_fn_window(scale: Arc<TimeScale>, start: usize, end: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = scale.points().get(start..end).unwrap_or(&[]).iter().map(|&t| f(t)).collect();
        Self::on_window(scale, start, values)
    }

    pub fn scale(&self) -> &Arc<TimeScale> {
        &self.scale
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    /// First grid index covered.
    pub fn start(&self) -> usize {
        self.start
    }

    /// One past the last grid index covered.
    pub fn end(&self) -> usize {
        self.start + self.values.len()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Grid points of the window.
    pub fn points(&self) -> &[f64] {
        &self.scale.points()[self.start..self.end()]
    }

    /// Value at a global grid index.
    pub fn at_index(&self, i: usize) -> Option<f64> {
        i.checked_sub(self.start).and_then(|k| self.values.get(k).copied())
    }

    /// Value at grid point `t`.
    pub fn at(&self, t: f64) -> Result<f64> {
        let i = self.scale.index_of(t)?;
        self.at_index(i).ok_or(TimeScaleError::OutsideDomain(t))
    }

    /// Pointwise map keeping the domain.
    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = self.points().iter().zip(&self.values).map(|(&t, &v)| f(t, v)).collect();
        Self { scale: self.scale.clone(), start: self.start, values }
    }

    /// `t -> f(sigma(t))`, defined where `sigma(t)` is in the window.
    pub fn shift_sigma(&self) -> Result<Self> {
        if self.values.len() < 2 && self.end() < self.scale.len() {
            return Err(TimeScaleError::GridTooSmall { needed: 2, got: self.values.len() });
        }
        let last = self.scale.len() - 1;
        if self.end() - 1 == last {
            let mut values = self.values[1..].to_vec();
            values.push(self.values[self.values.len() - 1]);
            Ok(Self { scale: self.scale.clone(), start: self.start, values })
        } else {
            Ok(Self { scale: self.scale.clone(), start: self.start, values: self.values[1..].to_vec() })
        }
    }

    /// Restricts to global indices `lo..hi`.
    pub fn restrict(&self, lo: usize, hi: usize) -> Result<Self> {
        if lo < self.start || hi > self.end() || hi <= lo {
            return Err(TimeScaleError::GridTooSmall { needed: hi.saturating_sub(lo).max(1), got: self.len() });
        }
        Ok(Self {
            scale: self.scale.clone(),
            start: lo,
            values: self.values[lo - self.start..hi - self.start].to_vec(),
        })
    }
}
