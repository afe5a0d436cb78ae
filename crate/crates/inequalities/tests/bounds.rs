use std::sync::Arc;

use proptest::prelude::*;
use tsvar_inequalities::*;
use tsvar_special::ts_exponential;
use tsvar_timescale::{GridFunction, TimeScale};

fn z(lo: f64, hi: f64) -> Arc<TimeScale> {
    Arc::new(TimeScale::uniform(lo, hi, 1.0).unwrap())
}

fn remark_f(x: f64, y: f64) -> f64 {
    match (x as i32, y as i32) {
        (0, 0) => 0.25,
        (1, 0) => 0.2,
        (2, 0) => 1.0,
        (0, 1) => 0.5,
        (1, 1) => 0.0,
        (2, 1) => 5.0,
        _ => 0.0,
    }
}

#[test]
fn two_variable_remark_numbers() {
    let a = |x: f64, y: f64| 1.0 + 0.5 * x + y;
    let b = gronwall_2d_bound(&z(0.0, 3.0), &z(0.0, 2.0), &a, &remark_f);
    for (i, j, r1, r2) in [(2, 1, 3.0 / 2.0, 29.0 / 20.0), (3, 2, 147.0 / 10.0, 637.0 / 40.0)] {
        let av = a(i as f64, j as f64);
        assert!((b.first.at(i, j) / av - r1).abs() < 1e-12, "{}", b.first.at(i, j) / av);
        assert!((b.second.at(i, j) / av - r2).abs() < 1e-12, "{}", b.second.at(i, j) / av);
    }
    assert_eq!(b.min().at(3, 2), b.first.at(3, 2));
}

#[test]
fn power_bound_dominates_equality_recursion() {
    let (ts1, ts2) = (z(0.0, 4.0), z(0.0, 3.0));
    let a = |x: f64, y: f64| 1.0 + x + 0.5 * y;
    let f = |x: f64, y: f64| 0.3 + 0.1 * (x - y).abs();
    let (p, q) = (2.0, 1.0);
    let bound = gronwall_2d_power_bound(&ts1, &ts2, &a, &f, p, q).unwrap();
    let mut u = vec![vec![0.0f64; 4]; 5];
    for i in 0..5 {
        for j in 0..4 {
            let mut s = a(i as f64, j as f64);
            for k in 0..i {
                for l in 0..j {
                    s += f(k as f64, l as f64) * u[k][l].powf(q);
                }
            }
            u[i][j] = s.powf(1.0 / p);
            assert!(u[i][j] <= bound.at(i, j) * (1.0 + 1e-12), "({i},{j})");
        }
    }
}

#[test]
fn classical_corollary_on_hz() {
    let (h, c, d) = (0.25, 2.0, 0.8);
    let ts = Arc::new(TimeScale::uniform(0.0, 3.0, h).unwrap());
    let a = GridFunction::from_fn(ts.clone(), |_| c);
    let b = GridFunction::from_fn(ts.clone(), |_| d);
    let g = gronwall_bound(&ts, &a, &b, 0.0).unwrap();
    for (i, &t) in ts.points().iter().enumerate() {
        let n = (t / h).round() as i32;
        let want = c + (0..n).map(|k| c * d * (1.0 + d * h).powi(n - k - 1) * h).sum::<f64>();
        assert!((g.values()[i] - want).abs() < 1e-12 * want, "{t}");
        assert!((g.values()[i] - c * (1.0 + d * h).powi(n)).abs() < 1e-12 * want);
    }
}

#[test]
fn comparison_degenerate_forms() {
    let ts = Arc::new(TimeScale::geometric(1.5, 0, 6).unwrap());
    let p = GridFunction::from_fn(ts.clone(), |t| 0.2 / t);
    let zero = GridFunction::from_fn(ts.clone(), |_| 0.0);
    let f = GridFunction::from_fn(ts.clone(), |t| t.sin());
    let t0 = ts.point(0);
    let b = comparison_bound(&ts, 3.0, &p, &zero, t0).unwrap();
    for (i, &t) in ts.points().iter().enumerate() {
        assert!((b.values()[i] - 3.0 * ts_exponential(&p, t, t0).unwrap()).abs() < 1e-12 * b.values()[i]);
    }
    let b = comparison_bound(&ts, 3.0, &zero, &f, t0).unwrap();
    let mut acc = 3.0;
    for i in 0..ts.len() {
        assert!((b.values()[i] - acc).abs() < 1e-12);
        acc += ts.mu_at(i) * f.values()[i];
    }
}

#[test]
fn integrodynamic_with_kernel_matches_direct_recursion() {
    let ts = Arc::new(TimeScale::geometric(1.2, 0, 10).unwrap());
    let f = |t: f64, x: f64, zz: f64| -0.3 * x + zz / (1.0 + t);
    let k = |t: f64, s: f64, x: f64| (t - s).cos() * x;
    let x = solve_integrodynamic(&ts, &f, &k, 1.5).unwrap();
    let mut want = vec![1.5];
    for i in 0..ts.len() - 1 {
        let t = ts.point(i);
        let zz: f64 = (0..i).map(|s| ts.mu_at(s) * k(t, ts.point(s), want[s])).sum();
        want.push(want[i] + ts.mu_at(i) * f(t, want[i], zz));
    }
    for (g, w) in x.values().iter().zip(&want) {
        assert!((g - w).abs() < 1e-13 * w.abs().max(1.0));
    }
}

#[test]
fn counterexample_regression() {
    let c = log_functional_counterexample().unwrap();
    assert!(c.refutes());
    assert!((c.value - (2.0 * 2f64.ln() - 1.0)).abs() < 1e-12);
    assert!((c.claimed_max - -(2f64.ln().ln())).abs() < 1e-12);
}

fn linear_spec() -> NonlinearGrowthSpec {
    NonlinearGrowthSpec::new(Arc::new(|u| u), Arc::new(|u| u), 1.0).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gronwall_below_classical_form_for_nondecreasing_a(
        steps in prop::collection::vec(0.1..1.5f64, 2..12),
        incs in prop::collection::vec(0.0..1.0f64, 12),
        bs in prop::collection::vec(0.0..2.0f64, 12),
        a0 in 0.0..3.0f64,
    ) {
        let mut pts = vec![0.0];
        for s in &steps { pts.push(pts.last().unwrap() + s); }
        let n = pts.len();
        let ts = Arc::new(TimeScale::explicit(pts).unwrap());
        let mut level = a0;
        let a = GridFunction::new(ts.clone(), (0..n).map(|i| { level += incs[i]; level }).collect()).unwrap();
        let b = GridFunction::new(ts.clone(), bs[..n].to_vec()).unwrap();
        let g = gronwall_bound(&ts, &a, &b, 0.0).unwrap();
        for i in 0..n {
            let cls = a.values()[i] * ts_exponential(&b, ts.point(i), 0.0).unwrap();
            prop_assert!(g.values()[i] <= cls * (1.0 + 1e-12) + 1e-12, "{} > {}", g.values()[i], cls);
        }
    }

    #[test]
    fn comparison_is_exact_for_the_equation(
        steps in prop::collection::vec(0.1..1.5f64, 2..12),
        ps in prop::collection::vec(-0.6..2.0f64, 12),
        fs in prop::collection::vec(-2.0..2.0f64, 12),
        y0 in -2.0..2.0f64,
    ) {
        let mut pts = vec![0.0];
        for s in &steps { pts.push(pts.last().unwrap() + s); }
        let n = pts.len();
        let ts = Arc::new(TimeScale::explicit(pts).unwrap());
        let p = GridFunction::new(ts.clone(), (0..n).map(|i| ps[i].max(-0.6 / ts.mu_at(i).max(1e-9))).collect()).unwrap();
        let f = GridFunction::new(ts.clone(), fs[..n].to_vec()).unwrap();
        let b = comparison_bound(&ts, y0, &p, &f, 0.0).unwrap();
        let mut y = y0;
        for i in 0..n {
            prop_assert!((b.values()[i] - y).abs() <= 1e-10 * y.abs().max(1.0));
            y += ts.mu_at(i) * (p.values()[i] * y + f.values()[i]);
        }
    }

    #[test]
    fn nonlinear_bound_on_ten_integers(
        incs in prop::collection::vec(0.0..0.5f64, 10),
        fs in prop::collection::vec(0.0..0.6f64, 10),
        a0 in 0.2..2.0f64,
        c in 0.0..0.4f64,
    ) {
        let ts = z(0.0, 9.0);
        let mut level = a0;
        let a = GridFunction::new(ts.clone(), incs.iter().map(|d| { level += d; level }).collect()).unwrap();
        let f = GridFunction::new(ts.clone(), fs.clone()).unwrap();
        let k = move |t: f64, s: f64| c * (1.0 + t - s);
        let bound = nonlinear_gronwall_bound(&ts, &a, &f, &k, &linear_spec()).unwrap();
        let (av, fv) = (a.values(), f.values());
        // Closed form with Phi = W = identity: Psi^-1(Psi(zeta) + x) = zeta e^x.
        let n = 10;
        let mut p = vec![1.0; n];
        let mut cum = vec![0.0; n];
        for i in 0..n - 1 {
            p[i + 1] = p[i] * (1.0 + fv[i]);
            cum[i + 1] = cum[i] + fv[i];
        }
        let zeta: f64 = (0..n - 2).map(|s| k((n - 2) as f64, s as f64) * p[s] * av[s]).sum();
        let mut outer = 0.0;
        for i in 0..n {
            let want = p[i] * (av[i] + outer);
            prop_assert!((bound.values()[i] - want).abs() <= 1e-7 * want, "{}: {} vs {}", i, bound.values()[i], want);
            let inner: f64 = (0..i).map(|r| k(i as f64, r as f64) * p[r] * cum[r]).sum();
            outer += fv[i] * zeta * inner.exp();
        }
        // Largest u allowed by the integral inequality.
        let mut u: Vec<f64> = Vec::new();
        for i in 0..n {
            let mut s = av[i];
            for r in 0..i {
                let inner: f64 = (0..r).map(|m| k(r as f64, m as f64) * u[m]).sum();
                s += fv[r] * (u[r] + inner);
            }
            u.push(s);
            prop_assert!(s <= bound.values()[i] * (1.0 + 1e-10), "{}: {} > {}", i, s, bound.values()[i]);
        }
    }

    #[test]
    fn nonlinear_bound_is_monotone_in_f(
        fs in prop::collection::vec(0.0..0.6f64, 8),
        bumps in prop::collection::vec(0.0..0.3f64, 8),
        c in 0.01..0.4f64,
    ) {
        let ts = z(0.0, 7.0);
        let a = GridFunction::from_fn(ts.clone(), |t| 1.0 + 0.1 * t);
        let f1 = GridFunction::new(ts.clone(), fs.clone()).unwrap();
        let f2 = GridFunction::new(ts.clone(), fs.iter().zip(&bumps).map(|(x, d)| x + d).collect()).unwrap();
        let k = move |t: f64, s: f64| c * (1.0 + t - s);
        let spec = NonlinearGrowthSpec::new(Arc::new(f64::sqrt), Arc::new(|u| u), 1.0).unwrap();
        let b1 = nonlinear_gronwall_bound(&ts, &a, &f1, &k, &spec).unwrap();
        let b2 = nonlinear_gronwall_bound(&ts, &a, &f2, &k, &spec).unwrap();
        for (x, y) in b1.values().iter().zip(b2.values()) {
            prop_assert!(*x <= y * (1.0 + 1e-9), "{} > {}", x, y);
        }
    }
}
