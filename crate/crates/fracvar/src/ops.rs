use tsvar_special::{gamma_fn, h_factorial};
use tsvar_timescale::{GridFunction, ScaleKind};

use crate::error::{FracError, Result};
use crate::kernel::KernelTable;

fn step(f: &GridFunction) -> Result<f64> {
    match f.scale().kind() {
        ScaleKind::Uniform { h } => Ok(h),
        _ => Err(FracError::InvalidGrid("fractional operators need a uniform grid".into())),
    }
}

fn check_sum_order(nu: f64) -> Result<()> {
    if nu > 0.0 && nu.is_finite() {
        Ok(())
    } else {
        Err(FracError::OrderNotPositive(nu))
    }
}

fn check_diff_order(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(FracError::OrderOutOfRange { name: "alpha", value: alpha })
    }
}

/// Integer `j` with `x` within rounding of `j`, or `OffDomain(t)`.
fn grid_index(x: f64, len: usize, t: f64) -> Result<usize> {
    let j = x.round();
    if (x - j).abs() > 1e-9 * x.abs().max(1.0) || j < 0.0 || j >= len as f64 {
        return Err(FracError::OffDomain(t));
    }
    Ok(j as usize)
}

/// Left fractional sum of order `nu` of `f` at `t = a + nu h + J h`, where `a` is the
/// first point of `f`: `(1/Gamma(nu)) sum_{k=0}^{J} (t - sigma(t_k))_h^(nu-1) f_k h`.
pub fn left_frac_sum(f: &GridFunction, nu: f64, t: f64) -> Result<f64> {
    check_sum_order(nu)?;
    let h = step(f)?;
    let a = f.points()[0];
    let j = grid_index((t - a) / h - nu, f.len(), t)?;
    let g = gamma_fn(nu)?;
    let mut s = 0.0;
    for (k, fk) in f.values()[..=j].iter().enumerate() {
        let x = ((j - k) as f64 - 1.0 + nu) * h;
        s += h_factorial(x, nu - 1.0, h)? * fk;
    }
    Ok(s * h / g)
}

/// Right fractional sum of order `nu` of `f` at `t = t_J - nu h`, up to the last point `b` of `f`:
/// `(1/Gamma(nu)) sum_{k=J}^{b} (t_k - sigma(t))_h^(nu-1) f_k h`.
pub fn right_frac_sum(f: &GridFunction, nu: f64, t: f64) -> Result<f64> {
    check_sum_order(nu)?;
    let h = step(f)?;
    let a = f.points()[0];
    let j = grid_index((t - a) / h + nu, f.len(), t)?;
    let g = gamma_fn(nu)?;
    let mut s = 0.0;
    for (k, fk) in f.values().iter().enumerate().skip(j) {
        let x = ((k - j) as f64 - 1.0 + nu) * h;
        s += h_factorial(x, nu - 1.0, h)? * fk;
    }
    Ok(s * h / g)
}

fn diff(f: &GridFunction, alpha: f64, right: bool) -> Result<GridFunction> {
    check_diff_order(alpha)?;
    let h = step(f)?;
    if f.len() < 2 {
        return Err(FracError::Shape("need at least 2 values".into()));
    }
    let k = KernelTable::new(h, 1.0 - alpha, f.len())?;
    let values = if right { k.right_diff(f.values()) } else { k.left_diff(f.values()) };
    Ok(GridFunction::on_window(f.scale().clone(), f.start(), values)?)
}

/// Left fractional difference of order `alpha` on the window of `f` minus its last point.
pub fn left_frac_diff(f: &GridFunction, alpha: f64) -> Result<GridFunction> {
    diff(f, alpha, false)
}

/// Right fractional difference of order `alpha`, based at the last point of `f`.
pub fn right_frac_diff(f: &GridFunction, alpha: f64) -> Result<GridFunction> {
    diff(f, alpha, true)
}

/// `|LHS - RHS|` of fractional summation by parts for `f` on `[a, rho(b)]` and `g` on `[a, b]`.
pub fn frac_sbp_residual(f: &GridFunction, g: &GridFunction, alpha: f64) -> Result<f64> {
    check_diff_order(alpha)?;
    let h = step(g)?;
    let n = f.len();
    if g.len() != n + 1 || f.points() != &g.points()[..n] {
        return Err(FracError::Shape(format!("f needs {} values and g {} on aligned points", n, n + 1)));
    }
    if n < 2 {
        return Err(FracError::Shape("need at least 2 values of f".into()));
    }
    let gamma = 1.0 - alpha;
    let (fv, gv) = (f.values(), g.values());
    let lhs: f64 = left_frac_diff(g, alpha)?.values().iter().zip(fv).map(|(d, fi)| h * d * fi).sum();
    let hg = h.powf(gamma);
    let mut rhs = hg * fv[n - 1] * gv[n] - hg * fv[0] * gv[0];
    let rf = right_frac_diff(f, alpha)?;
    rhs += rf.values().iter().enumerate().map(|(i, d)| h * d * gv[i + 1]).sum::<f64>();
    if gamma > 0.0 {
        let mut c = 0.0;
        for (i, fi) in fv.iter().enumerate() {
            c += h * h_factorial((i as f64 + gamma) * h, gamma - 1.0, h)? * fi;
            if i >= 1 {
                c -= h * h_factorial((i as f64 - 1.0 + gamma) * h, gamma - 1.0, h)? * fi;
            }
        }
        rhs += gamma / gamma_fn(gamma + 1.0)? * gv[0] * c;
    }
    Ok((lhs - rhs).abs())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use tsvar_timescale::{delta_integral, TimeScale};

    fn on(a: f64, b: f64, h: f64, f: impl Fn(f64) -> f64) -> GridFunction {
        GridFunction::from_fn(Arc::new(TimeScale::uniform(a, b, h).unwrap()), f)
    }

    #[test]
    fn unit_order_is_the_delta_sum() {
        let f = on(0.0, 2.0, 0.25, |t| t * t - 1.0);
        for j in 0..8 {
            let t = 0.25 * (j + 1) as f64;
            let want = delta_integral(&f, 0.0, t).unwrap();
            assert!((left_frac_sum(&f, 1.0, t).unwrap() - want).abs() < 1e-12);
            let tr = 0.25 * j as f64 - 0.25;
            let want: f64 = f.values()[j..].iter().map(|x| 0.25 * x).sum();
            assert!((right_frac_sum(&f, 1.0, tr).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn errors() {
        let f = on(0.0, 1.0, 0.25, |t| t);
        assert_eq!(left_frac_sum(&f, 0.0, 0.5), Err(FracError::OrderNotPositive(0.0)));
        assert_eq!(left_frac_sum(&f, 0.5, 0.3), Err(FracError::OffDomain(0.3)));
        assert_eq!(left_frac_sum(&f, 0.5, 5.125), Err(FracError::OffDomain(5.125)));
        assert!(matches!(left_frac_diff(&f, 1.5), Err(FracError::OrderOutOfRange { .. })));
        let geo = GridFunction::from_fn(Arc::new(TimeScale::geometric(2.0, 0, 4).unwrap()), |t| t);
        assert!(matches!(left_frac_sum(&geo, 0.5, 1.5), Err(FracError::InvalidGrid(_))));
    }

    #[test]
    fn zero_function_sums_to_zero() {
        let f = on(0.0, 1.0, 0.1, |_| 0.0);
        assert_eq!(left_frac_sum(&f, 0.4, 0.54).unwrap(), 0.0);
        assert_eq!(right_frac_sum(&f, 0.4, 0.46).unwrap(), 0.0);
    }
}
