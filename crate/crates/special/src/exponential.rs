use tsvar_timescale::{GridFunction, TimeScaleError};

use crate::error::{Result, SpecialError};

/// Tolerance for `1 + mu p = 0`.
pub const REGRESSIVE_TOL: f64 = 1e-14;

fn factor(p: &GridFunction, i: usize) -> Result<f64> {
    let ts = p.scale();
    let pv = p.at_index(i).ok_or_else(|| TimeScaleError::OutsideDomain(ts.point(i)))?;
    let f = 1.0 + ts.mu_at(i) * pv;
    if f.abs() <= REGRESSIVE_TOL {
        return Err(SpecialError::NonRegressive(ts.point(i)));
    }
    Ok(f)
}

/// `e_p(t, t0)`: product of `1 + mu(tau) p(tau)` over grid points of `[t0, t)`.
///
/// For `t < t0` the reciprocal of `e_p(t0, t)` is returned.
pub fn ts_exponential(p: &GridFunction, t: f64, t0: f64) -> Result<f64> {
    let ts = p.scale();
    let (i0, i1) = (ts.index_of(t0)?, ts.index_of(t)?);
    let (lo, hi) = if i0 <= i1 { (i0, i1) } else { (i1, i0) };
    let mut e = 1.0;
    for i in lo..hi {
        e *= factor(p, i)?;
    }
    Ok(if i0 <= i1 { e } else { 1.0 / e })
}

/// `t -> e_p(t, t0)` on every grid point from `t0` on.
pub fn ts_exponential_fn(p: &GridFunction, t0: f64) -> Result<GridFunction> {
    let ts = p.scale();
    let i0 = ts.index_of(t0)?;
    let mut values = vec![1.0];
    let mut e = 1.0;
    for i in i0..ts.len() - 1 {
        e *= factor(p, i)?;
        values.push(e);
    }
    Ok(GridFunction::on_window(ts.clone(), i0, values)?)
}

fn right_dense_points(p: &GridFunction) -> impl Iterator<Item = (f64, f64)> + '_ {
    let ts = p.scale();
    (p.start()..p.end().min(ts.len() - 1)).map(move |i| (ts.mu_at(i), p.at_index(i).unwrap_or(0.0)))
}

/// `1 + mu p != 0` on the domain of `p` (last grid point excluded).
pub fn is_regressive(p: &GridFunction) -> bool {
    right_dense_points(p).all(|(mu, v)| (1.0 + mu * v).abs() > REGRESSIVE_TOL)
}

/// `1 + mu p > 0` on the domain of `p` (last grid point excluded).
pub fn is_positively_regressive(p: &GridFunction) -> bool {
    right_dense_points(p).all(|(mu, v)| 1.0 + mu * v > 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::sync::Arc;
    use tsvar_timescale::{delta_derivative, TimeScale};

    #[test]
    fn integer_constant_rate() {
        let ts = Arc::new(TimeScale::uniform(0.0, 8.0, 1.0).unwrap());
        let p = GridFunction::from_fn(ts, |_| 0.3);
        let e = ts_exponential(&p, 6.0, 2.0).unwrap();
        assert!((e - 1.3f64.powi(4)).abs() < 1e-12);
        assert_eq!(ts_exponential(&p, 3.0, 3.0).unwrap(), 1.0);
        let back = ts_exponential(&p, 2.0, 6.0).unwrap();
        assert!((back * e - 1.0).abs() < 1e-14);
    }

    #[test]
    fn solves_the_dynamic_equation() {
        let ts = Arc::new(TimeScale::geometric(1.3, 0, 12).unwrap());
        let p = GridFunction::from_fn(ts.clone(), |t| (t * 0.7).sin());
        let e = ts_exponential_fn(&p, ts.min()).unwrap();
        let d = delta_derivative(&e).unwrap();
        for (k, dv) in d.values().iter().enumerate() {
            let want = p.values()[k] * e.values()[k];
            assert!((dv - want).abs() <= 1e-12 * want.abs().max(1.0));
        }
    }

    #[test]
    fn regressivity_checks() {
        let z = Arc::new(TimeScale::uniform(0.0, 5.0, 1.0).unwrap());
        let minus_one = GridFunction::from_fn(z.clone(), |_| -1.0);
        assert!(!is_regressive(&minus_one));
        assert!(matches!(ts_exponential(&minus_one, 3.0, 0.0), Err(SpecialError::NonRegressive(_))));
        let pos = GridFunction::from_fn(z, |t| t);
        assert!(is_positively_regressive(&pos));
        let half = Arc::new(TimeScale::uniform(0.0, 5.0, 0.5).unwrap());
        let m1 = GridFunction::from_fn(half.clone(), |_| -1.0);
        assert!(is_regressive(&m1) && is_positively_regressive(&m1));
        let m2 = GridFunction::from_fn(half, |_| -2.0);
        assert!(!is_regressive(&m2));
    }
}
