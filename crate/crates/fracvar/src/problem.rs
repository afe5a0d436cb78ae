use std::sync::Arc;

use tsvar_dsl::{Jet2, Lagrangian, Point};
use tsvar_special::{gamma_fn, h_factorial};
use tsvar_solver::multi_start;
use tsvar_timescale::GridFunction;
use tsvar_varcalc::{roots_or_error, sort_candidates, ExtremalCandidate, LegendreReport, MultiStartConfig};

use crate::error::{FracError, Result};
use crate::grid::{FracGrid, FracOrders};
use crate::kernel::KernelTable;

/// Margins at or above `-LEGENDRE_TOL` pass.
pub const LEGENDRE_TOL: f64 = 1e-8;

/// Minimize `sum_{t in [a,b)} h L(t, y(sigma t), left_diff_alpha y(t), right_diff_beta y(t))`.
///
/// A missing boundary value leaves that end free, closed by its natural condition.
#[derive(Clone)]
pub struct FracProblem {
    pub grid: FracGrid,
    pub orders: FracOrders,
    pub lagrangian: Arc<dyn Lagrangian>,
    pub a_value: Option<f64>,
    pub b_value: Option<f64>,
    kv: KernelTable,
    kw: KernelTable,
}

/// Natural boundary residuals at the free ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NaturalResiduals {
    pub left: Option<f64>,
    pub right: Option<f64>,
}

impl FracProblem {
    pub fn new(
        grid: FracGrid,
        orders: FracOrders,
        lagrangian: Arc<dyn Lagrangian>,
        a_value: Option<f64>,
        b_value: Option<f64>,
    ) -> Result<Self> {
        let len = grid.n() + 1;
        let kv = KernelTable::new(grid.h(), orders.gamma(), len)?;
        let kw = KernelTable::new(grid.h(), orders.nu_order(), len)?;
        Ok(FracProblem { grid, orders, lagrangian, a_value, b_value, kv, kw })
    }

    /// Number of free grid values.
    pub fn unknowns(&self) -> usize {
        self.grid.n() - 1 + usize::from(self.a_value.is_none()) + usize::from(self.b_value.is_none())
    }

    /// Full grid values from the free ones, ordered left to right.
    pub fn assemble(&self, x: &[f64]) -> Vec<f64> {
        let mut y = Vec::with_capacity(self.grid.n() + 1);
        let mut it = x.iter().copied();
        y.push(self.a_value.unwrap_or_else(|| it.next().unwrap_or(0.0)));
        y.extend(it.by_ref().take(self.grid.n() - 1));
        y.push(self.b_value.unwrap_or_else(|| it.next().unwrap_or(0.0)));
        y
    }

    fn values<'a>(&self, y: &'a GridFunction) -> Result<&'a [f64]> {
        if y.start() != 0 || y.len() != self.grid.n() + 1 || y.scale().points() != self.grid.scale().points() {
            return Err(FracError::Shape(format!("y must cover all {} grid points", self.grid.n() + 1)));
        }
        Ok(y.values())
    }

    /// `[y](t_i) = (t_i, y_{i+1}, left_diff y (t_i), right_diff y (t_i))` for `i < n`.
    fn points(&self, y: &[f64]) -> Vec<Point> {
        let v = self.kv.left_diff(y);
        let w = self.kw.right_diff(y);
        (0..self.grid.n()).map(|i| Point::new(self.grid.point(i), y[i + 1], v[i], w[i])).collect()
    }

    fn jets(&self, y: &[f64]) -> Result<Vec<Jet2>> {
        self.points(y).into_iter().map(|p| Ok(self.lagrangian.jet(p)?)).collect()
    }

    fn el_values(&self, jets: &[Jet2]) -> Vec<f64> {
        let lv: Vec<f64> = jets.iter().map(Jet2::l_v).collect();
        let lw: Vec<f64> = jets.iter().map(Jet2::l_w).collect();
        let rv = self.kv.right_diff(&lv);
        let dw = self.kw.left_diff(&lw);
        (0..self.grid.n() - 1).map(|i| jets[i].l_u() + rv[i] + dw[i]).collect()
    }

    fn natural_values(&self, jets: &[Jet2]) -> NaturalResiduals {
        let n = self.grid.n();
        let h = self.grid.h();
        let (hg, hn) = (self.kv.weight(0), self.kw.weight(0));
        let left = self.a_value.is_none().then(|| {
            let mut s = -hg * jets[0].l_v() + hn * jets[0].l_w();
            if self.orders.gamma() > 0.0 {
                for (i, j) in jets.iter().enumerate() {
                    s += self.kv.weight(i + 1) * j.l_v();
                    if i >= 1 {
                        s -= self.kv.weight(i) * j.l_v();
                    }
                }
            }
            s
        });
        let right = self.b_value.is_none().then(|| {
            let last = &jets[n - 1];
            let mut s = h * last.l_u() + hg * last.l_v() - hn * last.l_w();
            if self.orders.nu_order() > 0.0 {
                for (k, j) in jets.iter().enumerate() {
                    s += self.kw.weight(n - k) * j.l_w();
                    if k + 2 <= n {
                        s -= self.kw.weight(n - k - 1) * j.l_w();
                    }
                }
            }
            s
        });
        NaturalResiduals { left, right }
    }

    /// Stacked Euler-Lagrange and natural boundary rows at the free values `x`.
    pub fn system(&self, x: &[f64]) -> Result<Vec<f64>> {
        let jets = self.jets(&self.assemble(x))?;
        let mut r = self.el_values(&jets);
        let nat = self.natural_values(&jets);
        r.extend(nat.left);
        r.extend(nat.right);
        Ok(r)
    }

    fn margins(&self, y: &[f64]) -> Result<Vec<f64>> {
        let jets = self.jets(y)?;
        let n = self.grid.n();
        let h = self.grid.h();
        let (g, nu) = (self.orders.gamma(), self.orders.nu_order());
        let (hg, hn) = (h.powf(g), h.powf(nu));
        let cw = nu * (1.0 - nu) / gamma_fn(nu + 1.0)?;
        let cv = g * (g - 1.0) / gamma_fn(g + 1.0)?;
        let mut out = Vec::with_capacity(n - 1);
        for i in 0..n - 1 {
            let (p, q) = (&jets[i], &jets[i + 1]);
            let mut m = h * h * p.l_uu()
                + 2.0 * h * hg * p.l_uv()
                + 2.0 * h * hn * (nu - 1.0) * p.l_uw()
                + hg * hg * p.l_vv()
                + 2.0 * hg * hn * (nu - 1.0) * p.l_vw()
                + hn * hn * (nu - 1.0) * (nu - 1.0) * p.l_ww();
            m += (g - 1.0) * (g - 1.0) * hg * hg * q.l_vv() + 2.0 * (g - 1.0) * hg * hn * q.l_vw() + hn * hn * q.l_ww();
            if cw != 0.0 {
                for (s, js) in jets.iter().enumerate().take(i) {
                    let k = cw * h_factorial(((i - s) as f64 - 1.0 + nu) * h, nu - 2.0, h)?;
                    m += h.powi(4) * js.l_ww() * k * k;
                }
            }
            if cv != 0.0 {
                for (s, js) in jets.iter().enumerate().skip(i + 2) {
                    let k = cv * h_factorial(((s - i) as f64 - 2.0 + g) * h, g - 2.0, h)?;
                    m += h.powi(4) * js.l_vv() * k * k;
                }
            }
            out.push(m);
        }
        Ok(out)
    }

    fn functional(&self, y: &[f64]) -> Result<f64> {
        let h = self.grid.h();
        let mut s = 0.0;
        for p in self.points(y) {
            s += h * self.lagrangian.value(p)?;
        }
        Ok(s)
    }

    fn candidate(&self, y: Vec<f64>, residual_norm: f64) -> Result<ExtremalCandidate> {
        let legendre = LegendreReport::from_margins(self.margins(&y)?, LEGENDRE_TOL);
        let functional_value = self.functional(&y)?;
        Ok(ExtremalCandidate {
            y: GridFunction::new(self.grid.scale().clone(), y)?,
            residual_norm,
            legendre: Some(legendre),
            functional_value,
            multiplier: None,
        })
    }
}

/// Euler-Lagrange residual `L_u + right_diff_alpha(L_v) + left_diff_beta(L_w)` on `T^kappa^2`.
///
/// The right difference of `L_v` is based at `rho(b)`.
pub fn el_residual_frac(p: &FracProblem, y: &GridFunction) -> Result<GridFunction> {
    let jets = p.jets(p.values(y)?)?;
    Ok(GridFunction::on_window(p.grid.scale().clone(), 0, p.el_values(&jets))?)
}

/// Natural boundary residuals; `None` at a fixed end.
///
/// Each residual equals the partial derivative of the functional in the free end value.
pub fn natural_bc_residuals(p: &FracProblem, y: &GridFunction) -> Result<NaturalResiduals> {
    let jets = p.jets(p.values(y)?)?;
    Ok(p.natural_values(&jets))
}

/// Pointwise Legendre margins on `T^kappa^2` and the verdict `margin >= -LEGENDRE_TOL`.
pub fn legendre_frac_check(p: &FracProblem, y: &GridFunction) -> Result<LegendreReport> {
    Ok(LegendreReport::from_margins(p.margins(p.values(y)?)?, LEGENDRE_TOL))
}

/// `sum_{t in [a,b)} h L([y](t))`.
pub fn functional_value(p: &FracProblem, y: &GridFunction) -> Result<f64> {
    p.functional(p.values(y)?)
}

/// Multi-start Newton on the stacked system; candidates deduped and sorted by functional value.
pub fn solve_frac_el(p: &FracProblem, cfg: &MultiStartConfig) -> Result<Vec<ExtremalCandidate>> {
    let f = |x: &[f64]| p.system(x);
    let roots = roots_or_error(multi_start(p.unknowns(), &f, cfg))?;
    let mut out = roots
        .into_iter()
        .map(|r| p.candidate(p.assemble(&r.x), r.residual_norm))
        .collect::<Result<Vec<_>>>()?;
    sort_candidates(&mut out);
    Ok(out)
}
