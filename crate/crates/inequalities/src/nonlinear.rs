use std::sync::Arc;

use tsvar_solver::adaptive_simpson;
use tsvar_timescale::{GridFunction, TimeScale};

use crate::error::{IneqError, Result};
use crate::gronwall::value;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Absolute tolerance of the Psi quadratures.
pub const PSI_TOL: f64 = 1e-10;
const SPOT: [f64; 6] = [1e-3, 0.1, 0.5, 1.0, 10.0, 1e3];
const PSI_LIMIT: f64 = 1e300;

/// `Phi`, `W` and `Psi(x) = int_{x0}^x ds / Phi(W(s))`.
#[derive(Clone)]
pub struct NonlinearGrowthSpec {
    phi: ScalarFn,
    w: ScalarFn,
    x0: f64,
}

impl NonlinearGrowthSpec {
    /// Spot-checks positivity and monotonicity of `Phi` and `W` on sample points.
    pub fn new(phi: ScalarFn, w: ScalarFn, x0: f64) -> Result<Self> {
        if !(x0 > 0.0) {
            return Err(IneqError::InvalidInput(format!("Psi lower limit {x0} must be positive")));
        }
        for (name, g) in [("Phi", &phi), ("W", &w)] {
            let vals: Vec<f64> = SPOT.iter().map(|&u| g(u)).collect();
            if vals.iter().any(|v| !(*v > 0.0) || !v.is_finite()) || vals.windows(2).any(|p| p[1] < p[0]) {
                return Err(IneqError::InvalidInput(format!("{name} must be positive and nondecreasing")));
            }
        }
        Ok(NonlinearGrowthSpec { phi, w, x0 })
    }

    pub fn phi(&self, u: f64) -> f64 {
        (self.phi)(u)
    }

    pub fn w(&self, u: f64) -> f64 {
        (self.w)(u)
    }

    fn integral(&self, lo: f64, hi: f64) -> Result<f64> {
        let f = |s: f64| 1.0 / (self.phi)((self.w)(s));
        adaptive_simpson(f, lo, hi, PSI_TOL).map_err(|_| IneqError::QuadratureFailure { a: lo, b: hi })
    }

    /// `Psi(x)`; `Psi(0)` is `-inf` when the integrand blows up at 0.
    pub fn psi(&self, x: f64) -> Result<f64> {
        if x < 0.0 {
            return Err(IneqError::InvalidInput(format!("Psi at {x} < 0")));
        }
        if x == 0.0 {
            return Ok(self.integral(self.x0, 0.0).unwrap_or(f64::NEG_INFINITY));
        }
        self.integral(self.x0, x)
    }

    /// `Psi^-1(y)`, bracketed geometrically from `x0` and refined by bisection.
    pub fn psi_inverse(&self, y: f64) -> Result<f64> {
        let outside = || IneqError::OutsideDomPsiInverse { t: f64::NAN, value: y };
        if y == f64::NEG_INFINITY {
            return Ok(0.0);
        }
        if !y.is_finite() {
            return Err(outside());
        }
        // Bracket [lo, hi] with psi(lo) <= y <= psi(hi), tracking psi at both ends.
        let (mut lo, mut plo, mut hi, mut phi) = (self.x0, 0.0, self.x0, 0.0);
        if y > 0.0 {
            while phi < y {
                let next = hi * 2.0;
                if next > PSI_LIMIT {
                    return Err(outside());
                }
                let p = phi + self.integral(hi, next)?;
                (lo, plo, hi, phi) = (hi, phi, next, p);
            }
        } else {
            while plo > y {
                let next = lo * 0.5;
                if next < 1.0 / PSI_LIMIT {
                    return Err(outside());
                }
                let p = plo - self.integral(next, lo)?;
                (hi, phi, lo, plo) = (lo, plo, next, p);
            }
        }
        let _ = phi;
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if m <= lo || m >= hi || hi - lo <= 1e-15 * hi {
                break;
            }
            let pm = plo + self.integral(lo, m)?;
            if pm < y {
                (lo, plo) = (m, pm);
            } else {
                hi = m;
            }
        }
        Ok(0.5 * (lo + hi))
    }
}

/// Right side of the nonlinear Gronwall-Bihari bound `u(t) <= p(t) a(t) + p(t) int f W(Psi^-1(...))`.
///
/// `k(t, s)` is the kernel. Returns `OutsideDomPsiInverse` at the first `t` where the
/// argument of `Psi^-1` leaves its range.
pub fn nonlinear_gronwall_bound(
    ts: &Arc<TimeScale>,
    a: &GridFunction,
    f: &GridFunction,
    k: &dyn Fn(f64, f64) -> f64,
    spec: &NonlinearGrowthSpec,
) -> Result<GridFunction> {
    let n = ts.len();
    if n < 3 {
        return Err(IneqError::InvalidInput("need at least 3 grid points".into()));
    }
    let mu = |i: usize| ts.mu_at(i);
    let t = |i: usize| ts.point(i);
    let (av, fv): (Vec<f64>, Vec<f64>) =
        (0..n).map(|i| Ok((value(a, i)?, if i + 1 < n { value(f, i)? } else { 0.0 }))).collect::<Result<Vec<_>>>()?.into_iter().unzip();
    if av.iter().any(|x| !(*x > 0.0)) || av.windows(2).any(|p| p[1] < p[0]) {
        return Err(IneqError::InvalidInput("a must be positive and nondecreasing".into()));
    }
    if fv.iter().any(|x| *x < 0.0) {
        return Err(IneqError::InvalidInput("f must be nonnegative".into()));
    }
    // p(t) = e_f(t, a); cum(t) = int_a^t f.
    let mut p = vec![1.0; n];
    let mut cum = vec![0.0; n];
    for i in 0..n - 1 {
        p[i + 1] = p[i] * (1.0 + mu(i) * fv[i]);
        cum[i + 1] = cum[i] + mu(i) * fv[i];
    }
    let zeta: f64 = (0..n - 2).map(|s| mu(s) * k(t(n - 2), t(s)) * spec.phi(p[s] * av[s])).sum();
    let psi_zeta = if zeta > 0.0 { Some(spec.psi(zeta)?) } else { None };
    let mut values = Vec::with_capacity(n);
    let mut outer = 0.0;
    for i in 0..n {
        values.push(p[i] * av[i] + p[i] * outer);
        if i + 1 == n {
            break;
        }
        let inner: f64 = (0..i).map(|r| mu(r) * k(t(i), t(r)) * spec.phi(p[r]) * spec.phi(cum[r])).sum();
        // Psi^-1(Psi(zeta)) = zeta exactly; only a positive increment needs the inverse.
        let arg = if inner == 0.0 {
            zeta
        } else {
            let base = match psi_zeta {
                Some(v) => v,
                None => spec.psi(0.0)?,
            };
            spec.psi_inverse(base + inner).map_err(|e| match e {
                IneqError::OutsideDomPsiInverse { value, .. } => IneqError::OutsideDomPsiInverse { t: t(i + 1), value },
                other => other,
            })?
        };
        outer += mu(i) * fv[i] * spec.w(arg);
    }
    Ok(GridFunction::new(ts.clone(), values)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn linear() -> NonlinearGrowthSpec {
        NonlinearGrowthSpec::new(Arc::new(|u| u), Arc::new(|u| u), 1.0).unwrap()
    }

    #[test]
    fn psi_of_identities_is_a_logarithm() {
        let s = linear();
        assert!((s.psi(3.0).unwrap() - 3f64.ln()).abs() < 1e-9);
        assert!((s.psi(0.2).unwrap() - 0.2f64.ln()).abs() < 1e-9);
        for y in [-5.0, -0.3, 0.0, 0.7, 12.0] {
            let x = s.psi_inverse(y).unwrap();
            assert!((x - y.exp()).abs() < 1e-8 * y.exp(), "{y}: {x}");
        }
        assert_eq!(s.psi(0.0).unwrap(), f64::NEG_INFINITY);
        assert_eq!(s.psi_inverse(f64::NEG_INFINITY).unwrap(), 0.0);
    }

    #[test]
    fn bounded_psi_range_is_reported() {
        // Psi(x) = 1 - 1/x on x >= 1 never reaches 2.
        let s = NonlinearGrowthSpec::new(Arc::new(|u| u), Arc::new(|u| u * u), 1.0).unwrap();
        assert!(matches!(s.psi_inverse(2.0), Err(IneqError::OutsideDomPsiInverse { .. })));
        assert!((s.psi_inverse(0.5).unwrap() - 2.0).abs() < 1e-8);
    }

    #[test]
    fn spec_rejects_bad_growth_functions() {
        assert!(NonlinearGrowthSpec::new(Arc::new(|u| u), Arc::new(|u| -u), 1.0).is_err());
        assert!(NonlinearGrowthSpec::new(Arc::new(|u| 1.0 / u), Arc::new(|u| u), 1.0).is_err());
        assert!(NonlinearGrowthSpec::new(Arc::new(|u| u), Arc::new(|u| u), 0.0).is_err());
    }

    #[test]
    fn zero_kernel_gives_the_linear_bound() {
        let ts = Arc::new(TimeScale::uniform(0.0, 6.0, 1.0).unwrap());
        let a = GridFunction::from_fn(ts.clone(), |t| 1.0 + t);
        let f = GridFunction::from_fn(ts.clone(), |t| 0.1 * t);
        let b = nonlinear_gronwall_bound(&ts, &a, &f, &|_, _| 0.0, &linear()).unwrap();
        let mut p = 1.0;
        for i in 0..7 {
            assert!((b.values()[i] - p * a.values()[i]).abs() < 1e-12);
            p *= 1.0 + 0.1 * i as f64;
        }
    }
}
