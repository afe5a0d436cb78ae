use std::sync::Arc;

use proptest::prelude::*;
use tsvar_timescale::*;

fn grid_and_values(max_len: usize) -> impl Strategy<Value = (Arc<TimeScale>, Vec<f64>, Vec<f64>)> {
    (3..max_len)
        .prop_flat_map(|n| {
            (
                -5.0..5.0f64,
                prop::collection::vec(0.05..2.0f64, n - 1),
                prop::collection::vec(-10.0..10.0f64, n),
                prop::collection::vec(-10.0..10.0f64, n),
            )
        })
        .prop_map(|(a, steps, f, g)| {
            let mut pts = vec![a];
            for s in steps {
                let last = *pts.last().unwrap();
                pts.push(last + s);
            }
            (Arc::new(TimeScale::explicit(pts).unwrap()), f, g)
        })
}

proptest! {
    #[test]
    fn fundamental_theorem((ts, f, _g) in grid_and_values(20)) {
        let a = ts.min();
        let f = GridFunction::new(ts.clone(), f).unwrap();
        let big_f = delta_antiderivative(&f, a).unwrap();
        let d = delta_derivative(&big_f).unwrap();
        for (k, v) in d.values().iter().enumerate() {
            let expect = f.values()[k];
            prop_assert!((v - expect).abs() <= 1e-9 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn integration_by_parts((ts, f, g) in grid_and_values(20)) {
        let (a, b) = (ts.min(), ts.max());
        let f = GridFunction::new(ts.clone(), f).unwrap();
        let g = GridFunction::new(ts.clone(), g).unwrap();
        let fs = f.shift_sigma().unwrap();
        let gd = delta_derivative(&g).unwrap();
        let fd = delta_derivative(&f).unwrap();
        let lhs_f = GridFunction::on_window(ts.clone(), 0,
            gd.values().iter().zip(fs.values()).map(|(x, y)| x * y).collect()).unwrap();
        let rhs_f = GridFunction::on_window(ts.clone(), 0,
            fd.values().iter().zip(g.values()).map(|(x, y)| x * y).collect()).unwrap();
        let lhs = delta_integral(&lhs_f, a, b).unwrap();
        let boundary = f.at(b).unwrap() * g.at(b).unwrap() - f.at(a).unwrap() * g.at(a).unwrap();
        let rhs = boundary - delta_integral(&rhs_f, a, b).unwrap();
        let scale = lhs.abs().max(boundary.abs()).max(1.0);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * scale * ts.len() as f64);
    }

    #[test]
    fn additivity_and_monotonicity((ts, f, g) in grid_and_values(20), cut in 0.0..1.0f64) {
        let (a, b) = (ts.min(), ts.max());
        let c = ts.point(((ts.len() - 1) as f64 * cut) as usize);
        let f = GridFunction::new(ts.clone(), f).unwrap();
        let whole = delta_integral(&f, a, b).unwrap();
        let split = delta_integral(&f, a, c).unwrap() + delta_integral(&f, c, b).unwrap();
        prop_assert!((whole - split).abs() <= 1e-10 * whole.abs().max(1.0));
        let upper = GridFunction::new(ts.clone(), f.values().iter().zip(&g).map(|(x, y)| x + y.abs()).collect()).unwrap();
        prop_assert!(delta_integral(&f, a, b).unwrap() <= delta_integral(&upper, a, b).unwrap() + 1e-12);
        prop_assert!(nabla_integral(&f, a, b).unwrap() <= nabla_integral(&upper, a, b).unwrap() + 1e-12);
    }

    #[test]
    fn jumps_invert_in_the_interior((ts, _f, _g) in grid_and_values(20)) {
        for &t in &ts.points()[1..ts.len() - 1] {
            prop_assert_eq!(ts.sigma(ts.rho(t).unwrap()).unwrap(), t);
            prop_assert_eq!(ts.rho(ts.sigma(t).unwrap()).unwrap(), t);
        }
    }

    #[test]
    fn nabla_matches_shifted_delta((ts, f, _g) in grid_and_values(20)) {
        let (a, b) = (ts.min(), ts.max());
        let f = GridFunction::new(ts.clone(), f).unwrap();
        let nab = nabla_integral(&f, a, b).unwrap();
        let fs = f.shift_sigma().unwrap();
        let del = delta_integral(&fs, a, b).unwrap();
        prop_assert!((nab - del).abs() <= 1e-10 * nab.abs().max(1.0));
        let fd = delta_derivative(&f).unwrap();
        let fn_ = nabla_derivative(&f).unwrap();
        for i in 0..ts.len() - 1 {
            prop_assert_eq!(fn_.at_index(i + 1).unwrap(), fd.at_index(i).unwrap());
        }
    }
}

#[test]
fn uniform_constant_nabla_sum() {
    let ts = Arc::new(TimeScale::uniform(0.0, 2.0, 0.25).unwrap());
    let c = GridFunction::from_fn(ts, |_| 3.0);
    assert!((nabla_integral(&c, 0.0, 2.0).unwrap() - 8.0 * 0.25 * 3.0).abs() < 1e-15);
    let zero = delta_derivative(&c).unwrap();
    assert!(zero.values().iter().all(|&v| v == 0.0));
    assert!(nabla_derivative(&c).unwrap().values().iter().all(|&v| v == 0.0));
}

#[test]
fn step_grid_identity_derivative() {
    let ts = Arc::new(TimeScale::uniform(0.0, 3.0, 0.5).unwrap());
    let id = GridFunction::from_fn(ts, |t| t);
    assert!(delta_derivative(&id).unwrap().values().iter().all(|&v| (v - 1.0).abs() < 1e-15));
    let lin = id.map(|t, _| 3.0 * t - 1.0);
    assert!(higher_delta_derivative(&lin, 2).unwrap().values().iter().all(|&v| v.abs() < 1e-12));
}
