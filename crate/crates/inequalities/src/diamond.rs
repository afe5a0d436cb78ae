use tsvar_timescale::{diamond_integral, GridFunction};

use crate::error::{IneqError, Result};
use crate::report::BoundReport;

/// Diamond-alpha integral over the whole domain of `f`.
fn dint(f: &GridFunction, alpha: f64) -> Result<f64> {
    let pts = f.points();
    Ok(diamond_integral(f, pts[0], pts[pts.len() - 1], alpha)?)
}

fn same_domain(f: &GridFunction, g: &GridFunction) -> Result<()> {
    if f.start() != g.start() || f.len() != g.len() || f.points() != g.points() {
        return Err(IneqError::InvalidInput("functions must share one domain".into()));
    }
    Ok(())
}

fn zip_map(f: &GridFunction, g: &GridFunction, op: impl Fn(f64, f64) -> f64) -> GridFunction {
    let vals = f.values().iter().zip(g.values()).map(|(x, y)| op(*x, *y)).collect();
    GridFunction::on_window(f.scale().clone(), f.start(), vals).expect("window of f")
}

fn nonnegative(name: &str, f: &GridFunction) -> Result<()> {
    if f.values().iter().any(|x| *x < 0.0) {
        return Err(IneqError::InvalidInput(format!("{name} must be nonnegative")));
    }
    Ok(())
}

/// Jensen: `F(int |h| g / int |h|) <= int |h| F(g) / int |h|` with diamond-alpha integrals.
///
/// Without weights `h = 1`. `F` must be convex on the range of `g`.
pub fn jensen_certify(f: &dyn Fn(f64) -> f64, g: &GridFunction, weights: Option<&GridFunction>, alpha: f64) -> Result<BoundReport> {
    let ones = g.map(|_, _| 1.0);
    let h = weights.unwrap_or(&ones);
    same_domain(g, h)?;
    let abs_h = h.map(|_, x| x.abs());
    let mass = dint(&abs_h, alpha)?;
    if !(mass > 0.0) {
        return Err(IneqError::ZeroWeightMass);
    }
    let mean = dint(&zip_map(&abs_h, g, |w, x| w * x), alpha)? / mass;
    let fmean = dint(&zip_map(&abs_h, g, |w, x| w * f(x)), alpha)? / mass;
    Ok(BoundReport::scalar(f(mean), fmean))
}

/// Holder: `int h f g <= (int h f^p)^(1/p) (int h g^q)^(1/q)`, `1/p + 1/q = 1`, nonnegative data.
pub fn holder_certify(f: &GridFunction, g: &GridFunction, h: &GridFunction, p: f64, alpha: f64) -> Result<BoundReport> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(IneqError::InvalidExponent(p));
    }
    same_domain(f, g)?;
    same_domain(f, h)?;
    nonnegative("f", f)?;
    nonnegative("g", g)?;
    nonnegative("h", h)?;
    let q = p / (p - 1.0);
    let hf = zip_map(h, f, |w, x| w * x);
    let lhs = dint(&zip_map(&hf, g, |a, y| a * y), alpha)?;
    let fp = dint(&zip_map(h, f, |w, x| w * x.powf(p)), alpha)?;
    let gq = dint(&zip_map(h, g, |w, y| w * y.powf(q)), alpha)?;
    Ok(BoundReport::scalar(lhs, fp.powf(1.0 / p) * gq.powf(1.0 / q)))
}

/// Cauchy-Schwarz: `int |f g| <= sqrt(int f^2 int g^2)`.
pub fn cauchy_schwarz_certify(f: &GridFunction, g: &GridFunction, alpha: f64) -> Result<BoundReport> {
    same_domain(f, g)?;
    let lhs = dint(&zip_map(f, g, |x, y| (x * y).abs()), alpha)?;
    let ff = dint(&f.map(|_, x| x * x), alpha)?;
    let gg = dint(&g.map(|_, y| y * y), alpha)?;
    Ok(BoundReport::scalar(lhs, (ff * gg).sqrt()))
}

/// Minkowski: `(int |f+g|^p)^(1/p) <= (int |f|^p)^(1/p) + (int |g|^p)^(1/p)`.
pub fn minkowski_certify(f: &GridFunction, g: &GridFunction, p: f64, alpha: f64) -> Result<BoundReport> {
    if !(p > 1.0) || !p.is_finite() {
        return Err(IneqError::InvalidExponent(p));
    }
    same_domain(f, g)?;
    let norm = |x: &GridFunction| -> Result<f64> { Ok(dint(&x.map(|_, v| v.abs().powf(p)), alpha)?.powf(1.0 / p)) };
    let lhs = norm(&zip_map(f, g, |x, y| x + y))?;
    Ok(BoundReport::scalar(lhs, norm(f)? + norm(g)?))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use tsvar_timescale::TimeScale;

    fn on_z(values: Vec<f64>) -> GridFunction {
        let n = values.len() as f64;
        GridFunction::new(Arc::new(TimeScale::uniform(0.0, n - 1.0, 1.0).unwrap()), values).unwrap()
    }

    #[test]
    fn am_gm_on_the_integers() {
        let g = on_z(vec![1.0, 4.0, 2.0, 8.0, 0.5]);
        let r = jensen_certify(&|x: f64| -x.ln(), &g, None, 1.0).unwrap();
        assert!(r.holds);
        let am: f64 = (1.0 + 4.0 + 2.0 + 8.0) / 4.0;
        let gm = (1.0f64 * 4.0 * 2.0 * 8.0).powf(0.25);
        assert!((r.lhs[0] - -am.ln()).abs() < 1e-14);
        assert!((r.rhs[0] - -gm.ln()).abs() < 1e-14);
    }

    #[test]
    fn constant_g_is_the_equality_case() {
        let g = on_z(vec![1.7; 6]);
        let h = on_z(vec![0.3, -2.0, 1.0, 0.0, 4.0, 1.5]);
        for alpha in [0.0, 0.3, 1.0] {
            let r = jensen_certify(&|x: f64| x.exp(), &g, Some(&h), alpha).unwrap();
            assert!((r.lhs[0] - r.rhs[0]).abs() <= 1e-12);
        }
    }

    #[test]
    fn holder_with_two_is_cauchy_schwarz() {
        let f = on_z(vec![0.5, 1.0, 2.0, 0.1]);
        let g = on_z(vec![3.0, 0.2, 1.0, 2.0]);
        let one = on_z(vec![1.0; 4]);
        let h = holder_certify(&f, &g, &one, 2.0, 0.5).unwrap();
        let c = cauchy_schwarz_certify(&f, &g, 0.5).unwrap();
        assert!((h.lhs[0] - c.lhs[0]).abs() < 1e-14 && (h.rhs[0] - c.rhs[0]).abs() < 1e-14);
    }

    #[test]
    fn input_errors() {
        let f = on_z(vec![1.0, -1.0, 2.0]);
        let one = on_z(vec![1.0; 3]);
        assert_eq!(holder_certify(&one, &one, &one, 1.0, 0.5), Err(IneqError::InvalidExponent(1.0)));
        assert!(matches!(holder_certify(&f, &one, &one, 2.0, 0.5), Err(IneqError::InvalidInput(_))));
        assert_eq!(minkowski_certify(&f, &one, 0.5, 0.5), Err(IneqError::InvalidExponent(0.5)));
        let zero = on_z(vec![0.0; 3]);
        assert_eq!(jensen_certify(&|x| x * x, &one, Some(&zero), 0.5), Err(IneqError::ZeroWeightMass));
        assert!(jensen_certify(&|x| x * x, &on_z(vec![1.0; 4]), Some(&one), 0.5).is_err());
    }
}
