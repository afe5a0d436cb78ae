use std::collections::BTreeMap;
use std::sync::Arc;

use tsvar_dsl::{Lagrangian, Point};
use tsvar_solver::{multi_start, MultiStartConfig};
use tsvar_timescale::{GridFunction, TimeScale};

use crate::candidate::{full_values, grid_fn, roots_or_error, sort_candidates, window_fn, ExtremalCandidate};
use crate::error::{Result, VarError};

/// `L(t, u_0, ..., u_r)` with first partials, for problems with derivatives up to order `r`.
pub trait HigherOrderLagrangian: Send + Sync {
    fn name(&self) -> &str;
    fn order(&self) -> usize;
    fn value(&self, t: f64, u: &[f64]) -> Result<f64>;
    /// Partials with respect to `u_0, ..., u_r`.
    fn gradient(&self, t: f64, u: &[f64]) -> Result<Vec<f64>>;
}

/// `u^T Q u + c^T u` with symmetric `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticLagrangian {
    name: String,
    q: Vec<Vec<f64>>,
    c: Vec<f64>,
}

impl QuadraticLagrangian {
    pub fn new(name: impl Into<String>, q: Vec<Vec<f64>>, c: Vec<f64>) -> Result<Self> {
        let m = q.len();
        if m < 2 || c.len() != m || q.iter().any(|row| row.len() != m) {
            return Err(VarError::InvalidParameter("quadratic form needs (r+1)x(r+1) Q and r+1 c, r >= 1".into()));
        }
        if (0..m).any(|i| (0..m).any(|j| q[i][j] != q[j][i])) {
            return Err(VarError::InvalidParameter("Q must be symmetric".into()));
        }
        Ok(QuadraticLagrangian { name: name.into(), q, c })
    }

    /// `weight * u_k^2` in order `r`.
    pub fn square(name: &str, r: usize, k: usize, weight: f64) -> Self {
        let mut q = vec![vec![0.0; r + 1]; r + 1];
        q[k][k] = weight;
        QuadraticLagrangian { name: name.into(), q, c: vec![0.0; r + 1] }
    }
}

impl HigherOrderLagrangian for QuadraticLagrangian {
    fn name(&self) -> &str {
        &self.name
    }
    fn order(&self) -> usize {
        self.c.len() - 1
    }
    fn value(&self, _t: f64, u: &[f64]) -> Result<f64> {
        let quad: f64 = (0..u.len()).map(|i| u[i] * (0..u.len()).map(|j| self.q[i][j] * u[j]).sum::<f64>()).sum();
        Ok(quad + self.c.iter().zip(u).map(|(c, x)| c * x).sum::<f64>())
    }
    fn gradient(&self, _t: f64, u: &[f64]) -> Result<Vec<f64>> {
        Ok((0..u.len()).map(|i| 2.0 * (0..u.len()).map(|j| self.q[i][j] * u[j]).sum::<f64>() + self.c[i]).collect())
    }
}

/// A first-order DSL Lagrangian seen as order 1: `u_0 -> u`, `u_1 -> v`.
#[derive(Clone)]
pub struct FirstOrder(pub Arc<dyn Lagrangian>);

impl HigherOrderLagrangian for FirstOrder {
    fn name(&self) -> &str {
        "first-order"
    }
    fn order(&self) -> usize {
        1
    }
    fn value(&self, t: f64, u: &[f64]) -> Result<f64> {
        Ok(self.0.value(Point::new(t, u[0], u[1], 0.0))?)
    }
    fn gradient(&self, t: f64, u: &[f64]) -> Result<Vec<f64>> {
        let j = self.0.jet(Point::new(t, u[0], u[1], 0.0))?;
        Ok(vec![j.l_u(), j.l_v()])
    }
}

/// Name-keyed registry of higher-order Lagrangians.
#[derive(Clone, Default)]
pub struct Catalog {
    entries: BTreeMap<String, Arc<dyn HigherOrderLagrangian>>,
}

impl Catalog {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The built-in quadratic Lagrangians.
    pub fn builtin() -> Self {
        let mut c = Self::empty();
        c.register(Arc::new(QuadraticLagrangian::square("velocity-squared", 1, 1, 1.0)));
        c.register(Arc::new(QuadraticLagrangian::square("acceleration-squared", 2, 2, 1.0)));
        c.register(Arc::new(QuadraticLagrangian::square("jerk-squared", 3, 3, 1.0)));
        let mut osc = QuadraticLagrangian::square("oscillator", 1, 1, 1.0);
        osc.q[0][0] = -1.0;
        c.register(Arc::new(osc));
        let mut beam = QuadraticLagrangian::square("loaded-beam", 2, 2, 0.5);
        beam.c[0] = -1.0;
        c.register(Arc::new(beam));
        c
    }

    pub fn register(&mut self, l: Arc<dyn HigherOrderLagrangian>) {
        self.entries.insert(l.name().to_string(), l);
    }

    pub fn get(&self, name: &str) -> Result<Arc<dyn HigherOrderLagrangian>> {
        self.entries.get(name).cloned().ok_or_else(|| VarError::UnknownName(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

/// Minimize the sum over `[a, rho^{r-1}(b))` of `mu L(t, y^{sigma^r}, ..., y^{delta^r})`
/// with `y^{delta^i}` prescribed at `a` and at `rho^{r-1}(b)` for `i < r`.
#[derive(Clone)]
pub struct HigherOrderProblem {
    pub scale: Arc<TimeScale>,
    pub lagrangian: Arc<dyn HigherOrderLagrangian>,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
    a1: f64,
}

impl HigherOrderProblem {
    pub fn new(
        scale: Arc<TimeScale>,
        lagrangian: Arc<dyn HigherOrderLagrangian>,
        left: Vec<f64>,
        right: Vec<f64>,
    ) -> Result<Self> {
        let r = lagrangian.order();
        let (a1, _) = scale.hypothesis_h().ok_or(VarError::HypothesisHViolated)?;
        if r == 0 || left.len() != r || right.len() != r {
            return Err(VarError::InvalidParameter(format!("order {r} needs {r} boundary values at each end")));
        }
        if scale.len() < 2 * r + 1 {
            return Err(VarError::GridTooSmall { needed: 2 * r + 1, got: scale.len() });
        }
        Ok(HigherOrderProblem { scale, lagrangian, left, right, a1 })
    }

    pub fn order(&self) -> usize {
        self.lagrangian.order()
    }

    /// Number of free grid values, `y_r .. y_{n-r}`.
    pub fn unknowns(&self) -> usize {
        self.scale.len() - 2 * self.order()
    }

    /// Grid values from the free ones; the boundary rows are affine in each new value.
    pub fn assemble(&self, interior: &[f64]) -> Vec<f64> {
        let (ts, r) = (&self.scale, self.order());
        let n = ts.len() - 1;
        let mut y = vec![0.0; n + 1];
        y[r..=n - r].copy_from_slice(interior);
        let solve_slot = |y: &mut Vec<f64>, base: usize, slot: usize, order: usize, target: f64| {
            y[slot] = 0.0;
            let d0 = delta_pow_at(ts, y, base, order);
            y[slot] = 1.0;
            let d1 = delta_pow_at(ts, y, base, order);
            y[slot] = (target - d0) / (d1 - d0);
        };
        for i in 0..r {
            solve_slot(&mut y, 0, i, i, self.left[i]);
        }
        let k = n + 1 - r;
        for i in 0..r {
            solve_slot(&mut y, k, k + i, i, self.right[i]);
        }
        y
    }
}

/// `f^{delta^m}` at grid index `k` from values `f[k..=k+m]`.
pub fn delta_pow_at(ts: &TimeScale, f: &[f64], k: usize, m: usize) -> f64 {
    let mut d: Vec<f64> = f[k..=k + m].to_vec();
    for level in 0..m {
        for j in 0..m - level {
            d[j] = (d[j + 1] - d[j]) / ts.mu_at(k + j);
        }
    }
    d[0]
}

fn args_at(ts: &TimeScale, y: &[f64], i: usize, r: usize) -> Vec<f64> {
    (0..=r).map(|j| delta_pow_at(ts, y, i + r - j, j)).collect()
}

pub(crate) fn residual_values_higher(p: &HigherOrderProblem, y: &[f64]) -> Result<Vec<f64>> {
    let (ts, r) = (&p.scale, p.order());
    let n = ts.len() - 1;
    let grads = (0..=n - r)
        .map(|i| p.lagrangian.gradient(ts.point(i), &args_at(ts, y, i, r)))
        .collect::<Result<Vec<_>>>()?;
    let partial: Vec<Vec<f64>> = (0..=r).map(|k| grads.iter().map(|g| g[k]).collect()).collect();
    Ok((0..=n - 2 * r)
        .map(|i| {
            (0..=r)
                .map(|k| {
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    let factor = p.a1.powi(-(((k * k.saturating_sub(1)) / 2) as i32));
                    sign * factor * delta_pow_at(ts, &partial[k], i, k)
                })
                .sum()
        })
        .collect())
}

/// Euler-Lagrange residual `sum_k (-1)^k a1^{-(k-1)k/2} (L_{u_k})^{delta^k}` on `[a, rho^{2r}(b)]`.
pub fn el_residual_higher(p: &HigherOrderProblem, y: &GridFunction) -> Result<GridFunction> {
    let v = full_values(&p.scale, y)?;
    window_fn(&p.scale, residual_values_higher(p, v)?)
}

/// Delta-integral of the Lagrangian along `y` over `[a, rho^{r-1}(b))`.
pub fn functional_value_higher(p: &HigherOrderProblem, y: &GridFunction) -> Result<f64> {
    let (ts, r) = (&p.scale, p.order());
    let v = full_values(ts, y)?;
    let mut s = 0.0;
    for i in 0..=ts.len() - 1 - r {
        s += ts.mu_at(i) * p.lagrangian.value(ts.point(i), &args_at(ts, v, i, r))?;
    }
    Ok(s)
}

/// Multi-start Newton on the higher-order Euler-Lagrange system.
pub fn solve_el_higher(p: &HigherOrderProblem, cfg: &MultiStartConfig) -> Result<Vec<ExtremalCandidate>> {
    let f = |x: &[f64]| residual_values_higher(p, &p.assemble(x));
    let roots = roots_or_error(multi_start(p.unknowns(), &f, cfg))?;
    let mut out = Vec::with_capacity(roots.len());
    for root in roots {
        let y = grid_fn(&p.scale, p.assemble(&root.x))?;
        out.push(ExtremalCandidate {
            functional_value: functional_value_higher(p, &y)?,
            y,
            residual_norm: root.residual_norm,
            legendre: None,
            multiplier: None,
        });
    }
    sort_candidates(&mut out);
    Ok(out)
}
