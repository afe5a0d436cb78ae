use std::sync::Arc;

use tsvar_timescale::TimeScale;

use crate::error::{FracError, Result};

/// The uniform grid `{a, a + h, ..., b}` of hZ.
#[derive(Debug, Clone, PartialEq)]
pub struct FracGrid {
    a: f64,
    b: f64,
    h: f64,
    n: usize,
    scale: Arc<TimeScale>,
}

impl FracGrid {
    /// Requires `(b - a)/h` to be an integer `n >= 2`.
    pub fn new(a: f64, b: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) || !a.is_finite() || !b.is_finite() {
            return Err(FracError::InvalidGrid(format!("a = {a}, b = {b}, h = {h}")));
        }
        let steps = (b - a) / h;
        let n = steps.round();
        if (steps - n).abs() > 1e-9 * steps.abs().max(1.0) {
            return Err(FracError::InvalidGrid(format!("(b - a)/h = {steps} is not an integer")));
        }
        if n < 2.0 {
            return Err(FracError::InvalidGrid(format!("need at least 2 steps, got {n}")));
        }
        let n = n as usize;
        let scale = Arc::new(TimeScale::uniform(a, b, h)?);
        if scale.len() != n + 1 {
            return Err(FracError::InvalidGrid(format!("expected {} points, got {}", n + 1, scale.len())));
        }
        Ok(FracGrid { a, b, h, n, scale })
    }

    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }
    pub fn h(&self) -> f64 {
        self.h
    }
    /// Number of steps; the grid has `n + 1` points.
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn point(&self, i: usize) -> f64 {
        self.a + i as f64 * self.h
    }
    pub fn scale(&self) -> &Arc<TimeScale> {
        &self.scale
    }
}

/// Orders `alpha` of the left and `beta` of the right difference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FracOrders {
    pub alpha: f64,
    pub beta: f64,
}

impl FracOrders {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        for (name, value) in [("alpha", alpha), ("beta", beta)] {
            if !(value > 0.0 && value <= 1.0) {
                return Err(FracError::OrderOutOfRange { name, value });
            }
        }
        Ok(FracOrders { alpha, beta })
    }

    /// `1 - alpha`.
    pub fn gamma(&self) -> f64 {
        1.0 - self.alpha
    }

    /// `1 - beta`.
    pub fn nu_order(&self) -> f64 {
        1.0 - self.beta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        let g = FracGrid::new(0.0, 1.0, 0.25).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.scale().len(), 5);
        assert!(FracGrid::new(0.0, 1.0, 0.3).is_err());
        assert!(FracGrid::new(0.0, 1.0, 0.5).is_ok());
        assert!(FracGrid::new(0.0, 1.0, 1.0).is_err());
        assert!(FracGrid::new(0.0, 0.5, 0.1).is_ok());
        assert!(FracGrid::new(0.0, 1.0, -0.1).is_err());
    }

    #[test]
    fn order_validation() {
        let o = FracOrders::new(0.8, 0.5).unwrap();
        assert!((o.gamma() - 0.2).abs() < 1e-15);
        assert_eq!(o.nu_order(), 0.5);
        assert!(FracOrders::new(0.0, 0.5).is_err());
        assert!(FracOrders::new(1.2, 0.5).is_err());
        assert!(FracOrders::new(1.0, 1.0).is_ok());
    }
}
