use std::sync::Arc;

use proptest::prelude::*;
use tsvar_dsl::{parse, Point};
use tsvar_fracvar::*;
use tsvar_timescale::{GridFunction, TimeScale};
use tsvar_varcalc::{el_residual, VariationalProblem};

#[allow(clippy::too_many_arguments)]
fn problem(l: &str, a: f64, b: f64, h: f64, alpha: f64, beta: f64, ya: Option<f64>, yb: Option<f64>) -> FracProblem {
    let grid = FracGrid::new(a, b, h).unwrap();
    FracProblem::new(grid, FracOrders::new(alpha, beta).unwrap(), Arc::new(parse(l).unwrap()), ya, yb).unwrap()
}

fn on(p: &FracProblem, y: &[f64]) -> GridFunction {
    GridFunction::new(p.grid.scale().clone(), y.to_vec()).unwrap()
}

fn value(p: &FracProblem, y: &[f64]) -> f64 {
    functional_value(p, &on(p, y)).unwrap()
}

/// Central difference of the functional in `y_k`.
fn partial(p: &FracProblem, y: &[f64], k: usize) -> f64 {
    let e = 1e-6;
    let (mut up, mut dn) = (y.to_vec(), y.to_vec());
    up[k] += e;
    dn[k] -= e;
    (value(p, &up) - value(p, &dn)) / (2.0 * e)
}

/// `Q(h e_{i+1}) / h`, the second variation along a unit spike, from the Hessian of L.
fn spike_second_variation(p: &FracProblem, y: &[f64], i: usize) -> f64 {
    let (h, n) = (p.grid.h(), p.grid.n());
    let kv = KernelTable::new(h, p.orders.gamma(), n + 1).unwrap();
    let kw = KernelTable::new(h, p.orders.nu_order(), n + 1).unwrap();
    let (v, w) = (kv.left_diff(y), kw.right_diff(y));
    let mut eta = vec![0.0; n + 1];
    eta[i + 1] = h;
    let (ev, ew) = (kv.left_diff(&eta), kw.right_diff(&eta));
    let mut q = 0.0;
    for k in 0..n {
        let j = p.lagrangian.jet(Point::new(p.grid.point(k), y[k + 1], v[k], w[k])).unwrap();
        let d = [eta[k + 1], ev[k], ew[k]];
        for a in 0..3 {
            for b in 0..3 {
                q += h * j.second(a, b) * d[a] * d[b];
            }
        }
    }
    q / h
}

const EX3_ROW5: [f64; 5] = [0.0, 1.0306820, 1.8920322, 2.7429222, 1.0];

#[test]
fn unit_orders_give_the_load_equation() {
    let p = problem("0.5*v^2 - u", 0.0, 2.0, 0.5, 1.0, 1.0, Some(0.0), Some(0.0));
    let y = [0.0, 0.3, -0.2, 0.9, 0.0];
    let r = el_residual_frac(&p, &on(&p, &y)).unwrap();
    assert_eq!(r.len(), 3);
    for i in 0..3 {
        let d2 = (y[i + 2] - 2.0 * y[i + 1] + y[i]) / 0.25;
        assert!((r.values()[i] - (-d2 - 1.0)).abs() < 1e-12);
    }
    let exact: Vec<f64> = (0..5).map(|i| {
        let t = 0.5 * i as f64;
        0.5 * t * (2.0 - t)
    }).collect();
    let r = el_residual_frac(&p, &on(&p, &exact)).unwrap();
    assert!(r.values().iter().all(|x| x.abs() <= 1e-12), "{:?}", r.values());
}

#[test]
fn constant_lagrangian() {
    let p = problem("3", 0.0, 1.0, 0.25, 0.6, 0.4, Some(0.0), Some(1.0));
    let y = [0.0, 2.0, -1.0, 0.5, 1.0];
    assert!(el_residual_frac(&p, &on(&p, &y)).unwrap().values().iter().all(|x| *x == 0.0));
    assert!((value(&p, &y) - 3.0).abs() < 1e-12);
    let one = problem("1", 0.5, 2.0, 0.5, 0.3, 0.9, Some(0.0), Some(0.0));
    assert!((value(&one, &[1.0, 2.0, 3.0, 4.0]) - 1.5).abs() < 1e-12);
}

#[test]
fn table_candidate_is_an_extremal() {
    let p = problem("v^3 + 1*w^2", 0.0, 1.0, 0.25, 0.8, 0.5, Some(0.0), Some(1.0));
    let r = el_residual_frac(&p, &on(&p, &EX3_ROW5)).unwrap();
    assert!(r.values().iter().all(|x| x.abs() <= 1e-4), "{:?}", r.values());
}

#[test]
fn unit_order_margins_reduce_to_the_classical_form() {
    let p = problem("0.5*v^2 - u", 0.0, 1.0, 0.2, 1.0, 1.0, Some(0.0), Some(0.0));
    let rep = legendre_frac_check(&p, &on(&p, &[0.0, 0.1, 0.3, -0.2, 0.4, 0.0])).unwrap();
    assert!(rep.ok);
    assert!(rep.margins.iter().all(|m| (m - 2.0).abs() < 1e-12));
}

#[test]
fn table_legendre_verdicts() {
    let rows = [
        [-0.5511786, 0.0515282, 0.5133134],
        [0.2669091, 0.4878808, 0.7151924],
        [-2.6745703, 0.5599360, -2.6730125],
        [0.5789976, 1.0701515, 0.1840377],
        [1.0306820, 1.8920322, 2.7429222],
        [0.5087946, -0.1861431, 0.4489196],
        [4.0583690, -1.0299054, -5.0030989],
        [-1.7436106, -3.1898449, -0.8850511],
    ];
    let p = problem("v^3 + 1*w^2", 0.0, 1.0, 0.25, 0.8, 0.5, Some(0.0), Some(1.0));
    let ok: Vec<bool> = rows
        .iter()
        .map(|r| legendre_frac_check(&p, &on(&p, &[0.0, r[0], r[1], r[2], 1.0])).unwrap().ok)
        .collect();
    assert_eq!(ok, [false, true, false, false, true, false, false, false]);
}

#[test]
fn fixed_ends_have_no_natural_rows() {
    let p = problem("v^2", 0.0, 1.0, 0.25, 0.5, 0.5, Some(0.0), Some(1.0));
    let nat = natural_bc_residuals(&p, &on(&p, &[0.0, 0.1, 0.2, 0.3, 1.0])).unwrap();
    assert_eq!(nat, NaturalResiduals { left: None, right: None });
    assert_eq!(p.unknowns(), 3);
}

#[test]
fn free_right_end_at_unit_order_is_the_classical_condition() {
    let p = problem("0.5*v^2", 0.0, 1.0, 0.25, 1.0, 1.0, Some(0.0), None);
    let y = [0.0, 0.2, 0.5, 0.4, 0.9];
    let nat = natural_bc_residuals(&p, &on(&p, &y)).unwrap();
    assert_eq!(nat.left, None);
    assert!((nat.right.unwrap() - (0.9 - 0.4) / 0.25).abs() < 1e-12);
    let sol = solve_frac_el(&p, &MultiStartConfig { starts: 4, ..Default::default() }).unwrap();
    assert!(sol[0].y.values().iter().all(|x| x.abs() < 1e-9));
}

#[test]
fn natural_rows_are_linear_for_quadratic_lagrangians() {
    let p = problem("0.5*v^2 + u*w + 2*w^2", 0.0, 1.5, 0.25, 0.7, 0.4, None, None);
    let y: Vec<f64> = (0..7).map(|i| (i as f64 * 0.9).cos()).collect();
    let y2: Vec<f64> = y.iter().map(|x| 2.0 * x).collect();
    let a = natural_bc_residuals(&p, &on(&p, &y)).unwrap();
    let b = natural_bc_residuals(&p, &on(&p, &y2)).unwrap();
    assert!((b.left.unwrap() - 2.0 * a.left.unwrap()).abs() < 1e-12);
    assert!((b.right.unwrap() - 2.0 * a.right.unwrap()).abs() < 1e-12);
}

#[test]
fn unit_orders_agree_with_the_classical_residual() {
    for l in ["0.5*v^2 - u", "v^4 + u*v + sin(t)*u^2", "exp(v) - t*u"] {
        let p = problem(l, 0.0, 2.0, 0.25, 1.0, 1.0, Some(0.0), Some(1.0));
        let ts = Arc::new(TimeScale::uniform(0.0, 2.0, 0.25).unwrap());
        let c = VariationalProblem::new(ts.clone(), Arc::new(parse(l).unwrap()), 0.0, 1.0).unwrap();
        let y: Vec<f64> = (0..9).map(|i| (0.7 * i as f64).sin()).collect();
        let rf = el_residual_frac(&p, &on(&p, &y)).unwrap();
        let rc = el_residual(&c, &GridFunction::new(ts, y).unwrap()).unwrap();
        for (a, b) in rf.values().iter().zip(rc.values()) {
            assert!((a - b).abs() <= 1e-12, "{l}: {a} vs {b}");
        }
    }
}

fn orders() -> impl Strategy<Value = (f64, f64)> {
    (0.1..=1.0f64, 0.1..=1.0f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn residual_rows_are_scaled_gradients(
        y in prop::collection::vec(-1.0..1.0f64, 7),
        (alpha, beta) in orders(),
        h in prop::sample::select(vec![0.25, 0.5, 1.0]),
    ) {
        let b = 6.0 * h;
        let p = problem("v^3 + w^2 + u*v*w + 0.5*u^2 - t*u", 0.0, b, h, alpha, beta, None, None);
        let g = on(&p, &y);
        let r = el_residual_frac(&p, &g).unwrap();
        for i in 0..5 {
            let d = partial(&p, &y, i + 1) / h;
            prop_assert!((r.values()[i] - d).abs() <= 1e-6 * (1.0 + d.abs()), "row {}: {} vs {}", i, r.values()[i], d);
        }
        let nat = natural_bc_residuals(&p, &g).unwrap();
        let (dl, dr) = (partial(&p, &y, 0), partial(&p, &y, 6));
        prop_assert!((nat.left.unwrap() - dl).abs() <= 1e-6 * (1.0 + dl.abs()));
        prop_assert!((nat.right.unwrap() - dr).abs() <= 1e-6 * (1.0 + dr.abs()));
    }

    #[test]
    fn margins_equal_the_spike_second_variation(
        y in prop::collection::vec(-1.5..1.5f64, 8),
        (alpha, beta) in orders(),
        h in prop::sample::select(vec![0.1, 0.25, 0.5]),
    ) {
        let b = 7.0 * h;
        let p = problem("v^3 + 1.5*w^2 + u*v + v*w - u*w + u^2*w^2 + sin(v)", 0.0, b, h, alpha, beta, Some(y[0]), Some(y[7]));
        let rep = legendre_frac_check(&p, &on(&p, &y)).unwrap();
        prop_assert_eq!(rep.margins.len(), 6);
        for (i, m) in rep.margins.iter().enumerate() {
            let q = spike_second_variation(&p, &y, i);
            prop_assert!((m - q).abs() <= 1e-10 * (1.0 + q.abs()), "i = {}: {} vs {}", i, m, q);
        }
    }
}
