use std::collections::BTreeMap;
use std::sync::Arc;

use tsvar_solver::{adaptive_simpson, invert_increasing};
use tsvar_timescale::{GridFunction, TimeScale};

use crate::candidate::{full_values, grid_fn};
use crate::error::{Result, VarError};

/// Quadrature tolerance for `G(x)`.
const QUAD_TOL: f64 = 1e-13;

/// Scalar coefficient function.
pub type Phi = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Minimum,
    Maximum,
}

/// Inputs shared by the direct methods: `y(a) = 0`, `y(b) = B`.
#[derive(Clone)]
pub struct DirectInput {
    pub scale: Arc<TimeScale>,
    /// `phi(y)` for the power kind, `phi(t)` for the others.
    pub phi: Phi,
    pub b_value: f64,
    /// Exponent of the power kind.
    pub alpha: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DirectSolution {
    pub y: GridFunction,
    pub value: f64,
    pub extremum: Extremum,
    /// The constant `C` of the construction.
    pub c: f64,
}

/// A functional whose extremum follows from a Jensen-type inequality.
pub trait DirectMethod: Send + Sync {
    fn name(&self) -> &'static str;
    fn solve(&self, input: &DirectInput) -> Result<DirectSolution>;
    /// The functional on an arbitrary grid function.
    fn functional(&self, input: &DirectInput, y: &GridFunction) -> Result<f64>;
}

fn span(ts: &TimeScale) -> f64 {
    ts.max() - ts.min()
}

fn delta_sum(ts: &TimeScale, f: impl Fn(usize) -> f64) -> f64 {
    (0..ts.len() - 1).map(|i| ts.mu_at(i) * f(i)).sum()
}

fn phi_on_kappa(input: &DirectInput) -> Result<Vec<f64>> {
    let ts = &input.scale;
    (0..ts.len() - 1)
        .map(|i| {
            let v = (input.phi)(ts.point(i));
            if v > 0.0 && v.is_finite() {
                Ok(v)
            } else {
                Err(VarError::NonPositivePhi { at: ts.point(i), value: v })
            }
        })
        .collect()
}

/// `sum mu [ (G(y^sigma) - G(y)) / mu ]^alpha` with `G` the primitive of `phi`.
pub struct PowerMethod;

impl PowerMethod {
    fn alpha(input: &DirectInput) -> Result<f64> {
        match input.alpha {
            Some(a) if a != 0.0 && a != 1.0 && a.is_finite() => Ok(a),
            other => Err(VarError::InvalidParameter(format!("power exponent must be real and not 0 or 1, got {other:?}"))),
        }
    }

    fn primitive(input: &DirectInput, x: f64) -> Result<f64> {
        let phi = input.phi.clone();
        Ok(adaptive_simpson(move |s| phi(s), 0.0, x, QUAD_TOL)?)
    }
}

impl DirectMethod for PowerMethod {
    fn name(&self) -> &'static str {
        "power"
    }

    fn solve(&self, input: &DirectInput) -> Result<DirectSolution> {
        let alpha = Self::alpha(input)?;
        let ts = &input.scale;
        if !(input.b_value > 0.0) {
            return Err(VarError::InvalidParameter(format!("B must be positive, got {}", input.b_value)));
        }
        let g_b = Self::primitive(input, input.b_value)?;
        let c = g_b / span(ts);
        let g = |x: f64| Self::primitive(input, x).unwrap_or(f64::NAN);
        let n = ts.len() - 1;
        let mut values = Vec::with_capacity(n + 1);
        for i in 0..=n {
            values.push(match i {
                0 => 0.0,
                _ if i == n => input.b_value,
                _ => invert_increasing(g, c * (ts.point(i) - ts.min()), 0.0, input.b_value)?,
            });
        }
        let extremum = if alpha > 0.0 && alpha < 1.0 { Extremum::Maximum } else { Extremum::Minimum };
        Ok(DirectSolution { y: grid_fn(ts, values)?, value: span(ts) * c.powf(alpha), extremum, c })
    }

    fn functional(&self, input: &DirectInput, y: &GridFunction) -> Result<f64> {
        let alpha = Self::alpha(input)?;
        let ts = &input.scale;
        let v = full_values(ts, y)?;
        let g = v.iter().map(|&x| Self::primitive(input, x)).collect::<Result<Vec<_>>>()?;
        Ok(delta_sum(ts, |i| ((g[i + 1] - g[i]) / ts.mu_at(i)).powf(alpha)))
    }
}

/// `sum mu phi(t) exp(y^delta)`.
pub struct ExpMethod;

impl DirectMethod for ExpMethod {
    fn name(&self) -> &'static str {
        "exp"
    }

    fn solve(&self, input: &DirectInput) -> Result<DirectSolution> {
        let ts = &input.scale;
        let phi = phi_on_kappa(input)?;
        let c = (delta_sum(ts, |i| phi[i].ln()) + input.b_value) / span(ts);
        let mut values = vec![0.0];
        let mut acc = 0.0;
        for i in 0..ts.len() - 1 {
            acc += ts.mu_at(i) * phi[i].ln();
            values.push(c * (ts.point(i + 1) - ts.min()) - acc);
        }
        *values.last_mut().unwrap_or(&mut 0.0) = input.b_value;
        Ok(DirectSolution { y: grid_fn(ts, values)?, value: span(ts) * c.exp(), extremum: Extremum::Minimum, c })
    }

    fn functional(&self, input: &DirectInput, y: &GridFunction) -> Result<f64> {
        let ts = &input.scale;
        let (phi, v) = (phi_on_kappa(input)?, full_values(ts, y)?);
        Ok(delta_sum(ts, |i| phi[i] * ((v[i + 1] - v[i]) / ts.mu_at(i)).exp()))
    }
}

/// `sum mu (phi + y^delta) ln(phi + y^delta)`.
pub struct EntropyMethod;

impl DirectMethod for EntropyMethod {
    fn name(&self) -> &'static str {
        "entropy"
    }

    fn solve(&self, input: &DirectInput) -> Result<DirectSolution> {
        let ts = &input.scale;
        let phi = phi_on_kappa(input)?;
        let c = (input.b_value + delta_sum(ts, |i| phi[i])) / span(ts);
        for (i, &p) in phi.iter().enumerate() {
            if !(c > p) {
                return Err(VarError::PreconditionViolated { t: ts.point(i), c, phi: p });
            }
        }
        let mut values = vec![0.0];
        let mut acc = 0.0;
        for i in 0..ts.len() - 1 {
            acc += ts.mu_at(i) * phi[i];
            values.push(c * (ts.point(i + 1) - ts.min()) - acc);
        }
        Ok(DirectSolution { y: grid_fn(ts, values)?, value: span(ts) * c * c.ln(), extremum: Extremum::Minimum, c })
    }

    fn functional(&self, input: &DirectInput, y: &GridFunction) -> Result<f64> {
        let ts = &input.scale;
        let (phi, v) = (phi_on_kappa(input)?, full_values(ts, y)?);
        Ok(delta_sum(ts, |i| {
            let z = phi[i] + (v[i + 1] - v[i]) / ts.mu_at(i);
            z * z.ln()
        }))
    }
}

/// Name-keyed registry of direct methods.
#[derive(Clone, Default)]
pub struct DirectRegistry {
    kinds: BTreeMap<&'static str, Arc<dyn DirectMethod>>,
}

impl DirectRegistry {
    pub fn builtin() -> Self {
        let mut r = Self::default();
        r.register(Arc::new(PowerMethod));
        r.register(Arc::new(ExpMethod));
        r.register(Arc::new(EntropyMethod));
        r
    }

    pub fn register(&mut self, m: Arc<dyn DirectMethod>) {
        self.kinds.insert(m.name(), m);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn DirectMethod>> {
        self.kinds.get(name).cloned().ok_or_else(|| VarError::UnknownName(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.kinds.keys().copied()
    }
}
