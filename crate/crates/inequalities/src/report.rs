/// Relative slack allowed on the right side.
pub const BOUND_TOL: f64 = 1e-10;

/// `lhs <= rhs` up to `BOUND_TOL * max(1, |rhs|)`.
pub fn within(lhs: f64, rhs: f64) -> bool {
    lhs <= rhs + BOUND_TOL * rhs.abs().max(1.0)
}

/// Both sides of an inequality and the verdict, pointwise when grid-valued.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    pub holds: bool,
    /// Smallest `rhs - lhs`.
    pub margin: f64,
}

impl BoundReport {
    pub fn scalar(lhs: f64, rhs: f64) -> Self {
        Self::pointwise(vec![lhs], vec![rhs])
    }

    pub fn pointwise(lhs: Vec<f64>, rhs: Vec<f64>) -> Self {
        assert_eq!(lhs.len(), rhs.len(), "sides must have equal length");
        let holds = lhs.iter().zip(&rhs).all(|(l, r)| within(*l, *r));
        let margin = lhs.iter().zip(&rhs).map(|(l, r)| r - l).fold(f64::INFINITY, f64::min);
        BoundReport { lhs, rhs, holds, margin }
    }
}
