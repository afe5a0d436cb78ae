use std::sync::Arc;

use tsvar_timescale::TimeScale;

use crate::error::{IneqError, Result};

pub type Fn2<'a> = dyn Fn(f64, f64) -> f64 + 'a;

/// Values on the product grid `ts1 x ts2`, row `i` for `t1 = ts1[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Surface {
    pub ts1: Arc<TimeScale>,
    pub ts2: Arc<TimeScale>,
    values: Vec<f64>,
}

impl Surface {
    pub fn from_fn(ts1: &Arc<TimeScale>, ts2: &Arc<TimeScale>, f: impl Fn(usize, usize) -> f64) -> Self {
        let (n1, n2) = (ts1.len(), ts2.len());
        let values = (0..n1 * n2).map(|k| f(k / n2, k % n2)).collect();
        Surface { ts1: ts1.clone(), ts2: ts2.clone(), values }
    }

    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ts2.len() + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// The two bounds of the two-variable Gronwall inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct Gronwall2d {
    /// `a(t1,t2) e_{int_{a2}^{t2} f(., s2) D2 s2}(t1, a1)`.
    pub first: Surface,
    /// `a(t1,t2) e_{int_{a1}^{t1} f(s1, .) D1 s1}(t2, a2)`.
    pub second: Surface,
}

impl Gronwall2d {
    /// Pointwise minimum of both bounds.
    pub fn min(&self) -> Surface {
        Surface::from_fn(&self.first.ts1, &self.first.ts2, |i, j| self.first.at(i, j).min(self.second.at(i, j)))
    }
}

/// `e_{int_{a2}^{t2} k(., s2) D2 s2}(t1, a1)` on every grid point, from the first points of both scales.
fn exp_of_partial_integral(ts1: &TimeScale, ts2: &TimeScale, k: &dyn Fn(usize, usize) -> f64) -> Vec<Vec<f64>> {
    let (n1, n2) = (ts1.len(), ts2.len());
    let mut out = vec![vec![1.0; n2]; n1];
    for j in 0..n2 {
        for i in 1..n1 {
            let s = i - 1;
            let inner: f64 = (0..j).map(|l| ts2.mu_at(l) * k(s, l)).sum();
            out[i][j] = out[s][j] * (1.0 + ts1.mu_at(s) * inner);
        }
    }
    out
}

/// Both two-variable Gronwall bounds for nonnegative `f` and nondecreasing nonnegative `a`.
pub fn gronwall_2d_bound(ts1: &Arc<TimeScale>, ts2: &Arc<TimeScale>, a: &Fn2<'_>, f: &Fn2<'_>) -> Gronwall2d {
    let (p1, p2) = (ts1.points(), ts2.points());
    let e1 = exp_of_partial_integral(ts1, ts2, &|i, j| f(p1[i], p2[j]));
    let e2 = exp_of_partial_integral(ts2, ts1, &|j, i| f(p1[i], p2[j]));
    Gronwall2d {
        first: Surface::from_fn(ts1, ts2, |i, j| a(p1[i], p2[j]) * e1[i][j]),
        second: Surface::from_fn(ts1, ts2, |i, j| a(p1[i], p2[j]) * e2[j][i]),
    }
}

/// Bound for `u^p <= a + int int f u^q` with `p >= q > 0` and positive nondecreasing `a`.
pub fn gronwall_2d_power_bound(ts1: &Arc<TimeScale>, ts2: &Arc<TimeScale>, a: &Fn2<'_>, f: &Fn2<'_>, p: f64, q: f64) -> Result<Surface> {
    if !(q > 0.0 && p >= q && p.is_finite()) {
        return Err(IneqError::InvalidExponents { p, q });
    }
    let (p1, p2) = (ts1.points(), ts2.points());
    if p1.iter().any(|&x| p2.iter().any(|&y| !(a(x, y) > 0.0))) {
        return Err(IneqError::InvalidInput("a must be positive".into()));
    }
    let e = exp_of_partial_integral(ts1, ts2, &|i, j| f(p1[i], p2[j]) * a(p1[i], p2[j]).powf(q / p - 1.0));
    Ok(Surface::from_fn(ts1, ts2, |i, j| (a(p1[i], p2[j]) * e[i][j]).powf(1.0 / p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: i32) -> Arc<TimeScale> {
        Arc::new(TimeScale::uniform(0.0, n as f64, 1.0).unwrap())
    }

    #[test]
    fn zero_f_gives_a() {
        let a = |x: f64, y: f64| 1.0 + x + 2.0 * y;
        let b = gronwall_2d_bound(&z(3), &z(2), &a, &|_, _| 0.0);
        assert_eq!(b.first, b.second);
        assert_eq!(b.first.at(3, 2), 8.0);
        let pb = gronwall_2d_power_bound(&z(3), &z(2), &|_, _| 4.0, &|_, _| 0.0, 2.0, 1.0).unwrap();
        assert!(pb.values().iter().all(|v| (*v - 2.0).abs() < 1e-15));
    }

    #[test]
    fn unit_powers_match_the_first_bound() {
        let a = |x: f64, y: f64| 1.0 + x * y;
        let f = |x: f64, y: f64| 0.1 * (x + 1.0) * (2.0 - y).abs();
        let b = gronwall_2d_bound(&z(4), &z(3), &a, &f);
        let p = gronwall_2d_power_bound(&z(4), &z(3), &a, &f, 1.0, 1.0).unwrap();
        for (x, y) in b.first.values().iter().zip(p.values()) {
            assert!((x - y).abs() < 1e-13 * x);
        }
        assert!(gronwall_2d_power_bound(&z(2), &z(2), &a, &f, 1.0, 2.0).is_err());
    }
}
