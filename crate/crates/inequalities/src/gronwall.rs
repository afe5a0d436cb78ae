use std::sync::Arc;

use tsvar_special::is_positively_regressive;
use tsvar_timescale::{GridFunction, TimeScale, TimeScaleError};

use crate::error::{IneqError, Result};

pub(crate) fn value(f: &GridFunction, i: usize) -> Result<f64> {
    f.at_index(i).ok_or_else(|| TimeScaleError::OutsideDomain(f.scale().point(i)).into())
}

fn require_positively_regressive(p: &GridFunction) -> Result<()> {
    if is_positively_regressive(p) {
        return Ok(());
    }
    let ts = p.scale();
    let bad = (p.start()..p.end().min(ts.len() - 1))
        .find(|&i| 1.0 + ts.mu_at(i) * p.at_index(i).unwrap_or(0.0) <= 0.0)
        .unwrap_or(p.start());
    Err(IneqError::NonRegressive(ts.point(bad)))
}

/// `t -> x0 e_p(t, t0) + int_{t0}^t e_p(t, sigma(tau)) g(tau) Delta tau` for `t >= t0`.
fn variation_of_constants(ts: &Arc<TimeScale>, x0: impl Fn(usize) -> Result<f64>, p: &GridFunction, g: impl Fn(usize) -> Result<f64>, t0: f64) -> Result<GridFunction> {
    let i0 = ts.index_of(t0)?;
    let mut values = Vec::with_capacity(ts.len() - i0);
    // acc = int_{t0}^{t_i} e_p(t_i, sigma(tau)) g Delta tau, carried forward by the factor 1 + mu p.
    let mut acc = 0.0;
    let mut e = 1.0;
    for i in i0..ts.len() {
        values.push(x0(i)? * e + acc);
        if i + 1 < ts.len() {
            let f = 1.0 + ts.mu_at(i) * value(p, i)?;
            acc = acc * f + ts.mu_at(i) * g(i)?;
            e *= f;
        }
    }
    Ok(GridFunction::on_window(ts.clone(), i0, values)?)
}

/// `t -> a(t) + int_{t0}^t a(tau) b(tau) e_b(t, sigma(tau)) Delta tau` for `t >= t0`.
pub fn gronwall_bound(ts: &Arc<TimeScale>, a: &GridFunction, b: &GridFunction, t0: f64) -> Result<GridFunction> {
    let i0 = ts.index_of(t0)?;
    for i in i0..ts.len() - 1 {
        if value(b, i)? < 0.0 {
            return Err(IneqError::InvalidInput(format!("b({}) < 0", ts.point(i))));
        }
    }
    require_positively_regressive(b)?;
    // Written as a(t) + y(t) with y^Delta = b y + a b, y(t0) = 0.
    let y = variation_of_constants(ts, |_| Ok(0.0), b, |i| Ok(value(a, i)? * value(b, i)?), t0)?;
    let values = (i0..ts.len()).map(|i| Ok(value(a, i)? + y.values()[i - i0])).collect::<Result<Vec<_>>>()?;
    Ok(GridFunction::on_window(ts.clone(), i0, values)?)
}

/// `t -> y0 e_p(t, t0) + int_{t0}^t e_p(t, sigma(tau)) f(tau) Delta tau` for `t >= t0`.
pub fn comparison_bound(ts: &Arc<TimeScale>, y0: f64, p: &GridFunction, f: &GridFunction, t0: f64) -> Result<GridFunction> {
    require_positively_regressive(p)?;
    variation_of_constants(ts, |_| Ok(y0), p, |i| value(f, i), t0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_corollary_with_constants() {
        let (h, c, d) = (0.5, 2.0, 0.3);
        let ts = Arc::new(TimeScale::uniform(0.0, 4.0, h).unwrap());
        let a = GridFunction::from_fn(ts.clone(), |_| c);
        let b = GridFunction::from_fn(ts.clone(), |_| d);
        let g = gronwall_bound(&ts, &a, &b, 0.0).unwrap();
        for (i, v) in g.values().iter().enumerate() {
            let t = i as f64 * h;
            let want: f64 = c + (0..i).map(|k| c * d * (1.0 + d * h).powf((t - h * (k + 1) as f64) / h) * h).sum::<f64>();
            assert!((v - want).abs() < 1e-12 * want);
        }
    }

    #[test]
    fn degenerate_cases() {
        let ts = Arc::new(TimeScale::geometric(2.0, 0, 5).unwrap());
        let a = GridFunction::from_fn(ts.clone(), |t| 1.0 + t.sin());
        let zero = GridFunction::from_fn(ts.clone(), |_| 0.0);
        assert_eq!(gronwall_bound(&ts, &a, &zero, 2.0).unwrap().values(), &a.values()[1..]);
        let f = GridFunction::from_fn(ts.clone(), |t| t);
        let y = comparison_bound(&ts, 3.0, &zero, &f, 1.0).unwrap();
        let mut acc = 3.0;
        for i in 0..ts.len() {
            assert!((y.values()[i] - acc).abs() < 1e-12);
            acc += ts.mu_at(i) * ts.point(i);
        }
        let p = GridFunction::from_fn(ts.clone(), |_| -1.0);
        assert!(matches!(comparison_bound(&ts, 1.0, &p, &f, 1.0), Err(IneqError::NonRegressive(_))));
        let neg = GridFunction::from_fn(ts.clone(), |_| -0.1);
        assert!(matches!(gronwall_bound(&ts, &a, &neg, 1.0), Err(IneqError::InvalidInput(_))));
    }
}
