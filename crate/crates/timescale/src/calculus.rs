use crate::error::{Result, TimeScaleError};
use crate::function::GridFunction;

/// `f^Delta(t) = (f(sigma t) - f(t)) / mu(t)` on the window minus its last point.
pub fn delta_derivative(f: &GridFunction) -> Result<GridFunction> {
    if f.len() < 2 {
        return Err(TimeScaleError::GridTooSmall { needed: 2, got: f.len() });
    }
    let ts = f.scale();
    let v = f.values();
    let values = (0..v.len() - 1).map(|k| (v[k + 1] - v[k]) / ts.mu_at(f.start() + k)).collect();
    GridFunction::on_window(ts.clone(), f.start(), values)
}

/// `f^nabla(t) = (f(t) - f(rho t)) / nu(t)` on the window minus its first point.
pub fn nabla_derivative(f: &GridFunction) -> Result<GridFunction> {
    if f.len() < 2 {
        return Err(TimeScaleError::GridTooSmall { needed: 2, got: f.len() });
    }
    let ts = f.scale();
    let v = f.values();
    let values = (1..v.len()).map(|k| (v[k] - v[k - 1]) / ts.nu_at(f.start() + k)).collect();
    GridFunction::on_window(ts.clone(), f.start() + 1, values)
}

/// `n`-fold delta derivative; the window shrinks by one point per order.
pub fn higher_delta_derivative(f: &GridFunction, n: usize) -> Result<GridFunction> {
    if f.len() < n + 1 {
        return Err(TimeScaleError::GridTooSmall { needed: n + 1, got: f.len() });
    }
    let mut g = f.clone();
    for _ in 0..n {
        g = delta_derivative(&g)?;
    }
    Ok(g)
}

fn bounds(f: &GridFunction, a: f64, b: f64) -> Result<(usize, usize, f64)> {
    let ts = f.scale();
    let ia = ts.index_of(a)?;
    let ib = ts.index_of(b)?;
    Ok(if ia <= ib { (ia, ib, 1.0) } else { (ib, ia, -1.0) })
}

fn value(f: &GridFunction, i: usize) -> Result<f64> {
    f.at_index(i).ok_or_else(|| TimeScaleError::OutsideDomain(f.scale().point(i)))
}

/// Sum of `mu(t) f(t)` over grid points of `[a, b)`; reversed limits negate.
pub fn delta_integral(f: &GridFunction, a: f64, b: f64) -> Result<f64> {
    let (lo, hi, sign) = bounds(f, a, b)?;
    let ts = f.scale();
    let mut s = 0.0;
    for i in lo..hi {
        s += ts.mu_at(i) * value(f, i)?;
    }
    Ok(sign * s)
}

/// Sum of `nu(t) f(t)` over grid points of `(a, b]`; reversed limits negate.
pub fn nabla_integral(f: &GridFunction, a: f64, b: f64) -> Result<f64> {
    let (lo, hi, sign) = bounds(f, a, b)?;
    let ts = f.scale();
    let mut s = 0.0;
    for i in lo + 1..=hi {
        s += ts.nu_at(i) * value(f, i)?;
    }
    Ok(sign * s)
}

/// `alpha` times the delta integral plus `1 - alpha` times the nabla integral.
pub fn diamond_integral(f: &GridFunction, a: f64, b: f64, alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(TimeScaleError::InvalidAlpha(alpha));
    }
    let d = if alpha > 0.0 { delta_integral(f, a, b)? } else { 0.0 };
    let n = if alpha < 1.0 { nabla_integral(f, a, b)? } else { 0.0 };
    Ok(alpha * d + (1.0 - alpha) * n)
}

/// `t -> int_a^t f Delta tau` on every grid point of the scale from `a` on.
pub fn delta_antiderivative(f: &GridFunction, a: f64) -> Result<GridFunction> {
    let ts = f.scale();
    let ia = ts.index_of(a)?;
    let mut values = Vec::with_capacity(ts.len() - ia);
    let mut acc = 0.0;
    values.push(0.0);
    for i in ia..ts.len() - 1 {
        acc += ts.mu_at(i) * value(f, i)?;
        values.push(acc);
    }
    GridFunction::on_window(ts.clone(), ia, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::TimeScale;
    use std::sync::Arc;

    fn z(n: usize) -> Arc<TimeScale> {
        Arc::new(TimeScale::uniform(0.0, n as f64, 1.0).unwrap())
    }

    #[test]
    fn square_on_integers() {
        let f = GridFunction::from_fn(z(6), |t| t * t);
        let d = delta_derivative(&f).unwrap();
        for (t, v) in d.points().iter().zip(d.values()) {
            assert_eq!(*v, 2.0 * t + 1.0);
        }
        let n = nabla_derivative(&f).unwrap();
        for (t, v) in n.points().iter().zip(n.values()) {
            assert_eq!(*v, 2.0 * t - 1.0);
        }
        let d2 = higher_delta_derivative(&f, 2).unwrap();
        assert!(d2.values().iter().all(|&v| v == 2.0));
        assert_eq!(higher_delta_derivative(&f, 0).unwrap(), f);
        assert!(higher_delta_derivative(&f, 7).is_err());
    }

    #[test]
    fn integrals() {
        let one = GridFunction::from_fn(z(5), |_| 1.0);
        assert_eq!(delta_integral(&one, 0.0, 5.0).unwrap(), 5.0);
        assert_eq!(nabla_integral(&one, 0.0, 5.0).unwrap(), 5.0);
        assert_eq!(delta_integral(&one, 2.0, 2.0).unwrap(), 0.0);
        assert_eq!(delta_integral(&one, 5.0, 0.0).unwrap(), -5.0);
        let ts = Arc::new(TimeScale::uniform(0.0, 2.0, 0.5).unwrap());
        let id = GridFunction::from_fn(ts, |t| t);
        assert_eq!(delta_integral(&id, 0.0, 2.0).unwrap(), 1.5);
        assert_eq!(diamond_integral(&id, 0.0, 2.0, 2.0), Err(TimeScaleError::InvalidAlpha(2.0)));
    }

    #[test]
    fn diamond_half_on_integers() {
        let n = 6;
        let ts = Arc::new(TimeScale::uniform(1.0, (n + 1) as f64, 1.0).unwrap());
        let g = GridFunction::from_fn(ts, |t| t.sin() + 2.0);
        let alpha = 0.5;
        let expect = alpha * (1..=n).map(|t| (t as f64).sin() + 2.0).sum::<f64>()
            + (1.0 - alpha) * (2..=n + 1).map(|t| (t as f64).sin() + 2.0).sum::<f64>();
        let got = diamond_integral(&g, 1.0, (n + 1) as f64, alpha).unwrap();
        assert!((got - expect).abs() < 1e-12);
    }

    #[test]
    fn integral_needs_values_on_range() {
        let f = GridFunction::from_fn(z(5), |t| t);
        let d = delta_derivative(&f).unwrap();
        assert!(delta_integral(&d, 0.0, 5.0).is_ok());
        assert!(nabla_integral(&d, 0.0, 5.0).is_err());
    }
}
