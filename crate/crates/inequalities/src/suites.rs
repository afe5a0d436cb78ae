use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tsvar_timescale::{GridFunction, TimeScale};

use crate::diamond::{cauchy_schwarz_certify, holder_certify, jensen_certify, minkowski_certify};
use crate::error::{IneqError, Result};
use crate::gronwall::{comparison_bound, gronwall_bound};
use crate::nonlinear::{nonlinear_gronwall_bound, NonlinearGrowthSpec, ScalarFn};
use crate::report::BoundReport;
use crate::two_d::{gronwall_2d_bound, gronwall_2d_power_bound};

/// Outcome of a randomized certification run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub trials: usize,
    pub held: usize,
    /// Smallest `rhs - lhs` over all trials.
    pub worst_margin: f64,
    /// First trial that failed, if any.
    pub first_failure: Option<usize>,
}

impl SuiteReport {
    pub fn all_hold(&self) -> bool {
        self.held == self.trials
    }
}

/// A family of random instances satisfying one theorem's hypotheses.
pub trait CertificationSuite: Send + Sync {
    fn name(&self) -> &'static str;
    /// One random instance, certified.
    fn trial(&self, rng: &mut ChaCha8Rng) -> Result<BoundReport>;
}

/// Runs `trials` instances; trial `k` draws from stream `k` of the seeded generator.
pub fn run_suite(suite: &dyn CertificationSuite, trials: usize, seed: u64) -> Result<SuiteReport> {
    let mut held = 0;
    let mut worst = f64::INFINITY;
    let mut first_failure = None;
    for k in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64);
        let r = suite.trial(&mut rng)?;
        worst = worst.min(r.margin);
        if r.holds {
            held += 1;
        } else if first_failure.is_none() {
            first_failure = Some(k);
        }
    }
    Ok(SuiteReport { suite: suite.name().into(), trials, held, worst_margin: worst, first_failure })
}

/// A random isolated time scale with `n` points: uniform, geometric or irregular.
pub fn random_scale(rng: &mut ChaCha8Rng, n: usize) -> Arc<TimeScale> {
    let ts = match rng.random_range(0..3) {
        0 => {
            let h = rng.random_range(0.1..1.5);
            TimeScale::explicit((0..n).map(|i| i as f64 * h).collect())
        }
        1 => TimeScale::geometric(rng.random_range(1.1..1.5), 0, n as i32 - 1),
        _ => {
            let mut t = rng.random_range(-2.0..2.0);
            TimeScale::explicit(
                (0..n)
                    .map(|_| {
                        let v = t;
                        t += rng.random_range(0.05..1.5);
                        v
                    })
                    .collect(),
            )
        }
    };
    Arc::new(ts.expect("valid random scale"))
}

fn random_fn(rng: &mut ChaCha8Rng, ts: &Arc<TimeScale>, lo: f64, hi: f64) -> GridFunction {
    GridFunction::new(ts.clone(), (0..ts.len()).map(|_| rng.random_range(lo..hi)).collect()).expect("length")
}

const CONVEX: [fn(f64) -> f64; 4] = [|x| x * x, f64::exp, |x| -x.ln(), |x| x * x.ln()];

struct Jensen {
    weighted: bool,
}

impl CertificationSuite for Jensen {
    fn name(&self) -> &'static str {
        if self.weighted {
            "jensen"
        } else {
            "jensen-plain"
        }
    }
    fn trial(&self, rng: &mut ChaCha8Rng) -> Result<BoundReport> {
        let n = rng.random_range(2..=20);
        let ts = random_scale(rng, n);
        let g = random_fn(rng, &ts, 0.1, 3.0);
        let f = CONVEX[rng.random_range(0..CONVEX.len())];
        if self.weighted {
            let mut h = random_fn(rng, &ts, -2.0, 2.0);
            if h.values().iter().all(|x| *x == 0.0) {
                h = h.map(|_, _| 1.0);
            }
            jensen_certify(&f, &g, Some(&h), rng.random_range(0.0..=1.0))
        } else {
            jensen_certify(&f, &g, None, 1.0)
        }
    }
}

fn pick_alpha(rng: &mut ChaCha8Rng) -> f64 {
    [0.0, 0.5, 1.0][rng.random_range(0..3)]
}

struct Holder;

impl CertificationSuite for Holder {
    fn name(&self) -> &'static str {
        "holder"
    }
    fn trial(&self, rng: &mut ChaCha8Rng) -> Result<BoundReport> {
        let ts = random_scale(rng, 20);
        let (f, g, h) = (random_fn(rng, &ts, 0.0, 3.0), random_fn(rng, &ts, 0.0, 3.0), random_fn(rng, &ts, 0.0, 3.0));
        let p = rng.random_range(1.05..6.0);
        holder_certify(&f, &g, &h, p, pick_alpha(rng))
    }
}

struct CauchySchwarz;

impl CertificationSuite for CauchySchwarz {
    fn name(&self) -> &'static str {
        "cauchy-schwarz"
    }
    fn trial(&self, rng: &mut ChaCha8Rng) -> Result<BoundReport> {
        let ts = random_scale(rng, 20);
        let (f, g) = (random_fn(rng, &ts, -3.0, 3.0), random_fn(rng, &ts, -3.0, 3.0));
        cauchy_schwarz_certify(&f, &g, pick_alpha(rng))
    }
}

struct Minkowski;

impl CertificationSuite for Minkowski {
    fn name(&self) -> &'static str {
        "minkowski"
    }
    fn trial(&self, rng: &mut ChaCha8Rng) -> Result<BoundReport> {
        let ts = random_scale(rng, 20);
        let (f, g) = (random_fn(rng, &ts, -3.0, 3.0), random_fn(rng, &ts, -3.0, 3.0));
        let p = rng.random_range(1.05..6.0);
        minkowski_certify(&f, &g, p, pick_alpha(rng))
    }
}

struct Gronwall;

impl CertificationSuite for Gronwall {
    fn name(&self) -> &'static str {
        "gronwall"
    }
    fn trial(&self, rng: &mut ChaCha8Rng) -> Result<BoundReport> {
        let n = rng.random_range(2..=15);
        let ts = random_scale(rng, n);
        let a = random_fn(rng, &ts, 0.0, 3.0);
        let b = random_fn(rng, &ts, 0.0, 2.0);
        // u = a + int b u minus a nonnegative slack satisfies the hypothesis.
        let mut u = Vec::with_capacity(n);
        let mut acc = 0.0;
        for i in 0..n {
            let slack = if rng.random_bool(0.3) { 0.0 } else { rng.random_range(0.0..1.0) };
            u.push(a.values()[i] + acc - slack);
            acc += ts.mu_at(i) * b.values()[i] * u[i];
        }
        let bound = gronwall_bound(&ts, &a, &b, ts.point(0))?;
        Ok(BoundReport::pointwise(u, bound.into_values()))
    }
}

struct Comparison;

impl CertificationSuite for Comparison {
    fn name(&self) -> &'static str {
        "comparison"
    }
    fn trial(&self, rng: &mut ChaCha8Rng) -> Result<BoundReport> {
        let n = rng.random_range(2..=15);
        let ts = random_scale(rng, n);
        let p = GridFunction::new(
            ts.clone(),
            (0..n).map(|i| rng.random_range(-0.95 / ts.mu_at(i).max(1e-9)..2.0)).collect(),
        )?;
        let f = random_fn(rng, &ts, -2.0, 2.0);
        let y0 = rng.random_range(-2.0..2.0);
        let mut y = vec![y0];
        for i in 0..n - 1 {
            let slack = if rng.random_bool(0.3) { 0.0 } else { rng.random_range(0.0..1.0) };
            y.push(y[i] + ts.mu_at(i) * (p.values()[i] * y[i] + f.values()[i] - slack));
        }
        let bound = comparison_bound(&ts, y0, &p, &f, ts.point(0))?;
        Ok(BoundReport::pointwise(y, bound.into_values()))
    }
}

struct Gronwall2d;

impl CertificationSuite for Gronwall2d {
    fn name(&self) -> &'static str {
        "gronwall2d"
    }
    fn trial(&self, rng: &mut ChaCha8Rng) -> Result<BoundReport> {
        let (n1, n2) = (rng.random_range(2..=7), rng.random_range(2..=7));
        let (ts1, ts2) = (random_scale(rng, n1), random_scale(rng, n2));
        let (r1, r2) = (rng.random_range(0.0..1.0), rng.random_range(0.0..1.0));
        let a0 = rng.random_range(0.1..2.0);
        let base1: Vec<f64> = ts1.points().iter().map(|t| t - ts1.point(0)).collect();
        let base2: Vec<f64> = ts2.points().iter().map(|t| t - ts2.point(0)).collect();
        let av = |i: usize, j: usize| a0 + r1 * base1[i] + r2 * base2[j] + 0.1 * base1[i] * base2[j];
        let fv: Vec<f64> = (0..n1 * n2).map(|_| rng.random_range(0.0..1.5)).collect();
        let (p1, p2) = (ts1.points().to_vec(), ts2.points().to_vec());
        let idx = |t: f64, pts: &[f64]| pts.iter().position(|&x| x == t).expect("grid point");
        let a = |x: f64, y: f64| av(idx(x, &p1), idx(y, &p2));
        let f = |x: f64, y: f64| fv[idx(x, &p1) * n2 + idx(y, &p2)];
        let (p, q): (f64, f64) = (rng.random_range(1.0..3.0), rng.random_range(0.3..1.0));
        let q = q.min(p);
        // Equality-driven solutions with random slack.
        let mut u = vec![0.0; n1 * n2];
        let mut w = vec![0.0f64; n1 * n2];
        for i in 0..n1 {
            for j in 0..n2 {
                let (mut s, mut sq) = (0.0, 0.0);
                for k in 0..i {
                    for l in 0..j {
                        let m = ts1.mu_at(k) * ts2.mu_at(l) * fv[k * n2 + l];
                        s += m * u[k * n2 + l];
                        sq += m * w[k * n2 + l].powf(q);
                    }
                }
                u[i * n2 + j] = (av(i, j) + s) * rng.random_range(0.5..=1.0);
                w[i * n2 + j] = ((av(i, j) + sq) * rng.random_range(0.5..=1.0)).powf(1.0 / p);
            }
        }
        let b = gronwall_2d_bound(&ts1, &ts2, &a, &f);
        let pb = gronwall_2d_power_bound(&ts1, &ts2, &a, &f, p, q)?;
        let mut lhs = u.clone();
        lhs.extend(&u);
        lhs.extend(&w);
        let mut rhs = b.first.values().to_vec();
        rhs.extend(b.second.values());
        rhs.extend(pb.values());
        Ok(BoundReport::pointwise(lhs, rhs))
    }
}

struct NonlinearGronwall;

impl CertificationSuite for NonlinearGronwall {
    fn name(&self) -> &'static str {
        "nonlinear-gronwall"
    }
    fn trial(&self, rng: &mut ChaCha8Rng) -> Result<BoundReport> {
        let n = rng.random_range(3..=8);
        let ts = random_scale(rng, n);
        let phis: [ScalarFn; 2] = [Arc::new(|u| u), Arc::new(f64::sqrt)];
        let ws: [ScalarFn; 3] = [Arc::new(|u| u), Arc::new(f64::sqrt), Arc::new(|u| u / (1.0 + u))];
        let phi = phis[rng.random_range(0..2)].clone();
        let w = ws[rng.random_range(0..3)].clone();
        let spec = NonlinearGrowthSpec::new(phi.clone(), w.clone(), rng.random_range(0.5..2.0))?;
        let mut a = Vec::with_capacity(n);
        let mut level = rng.random_range(0.1..2.0);
        for _ in 0..n {
            a.push(level);
            level += rng.random_range(0.0..0.5);
        }
        let a = GridFunction::new(ts.clone(), a)?;
        let f = random_fn(rng, &ts, 0.0, 0.8);
        let c = rng.random_range(0.01..0.5);
        let k = move |t: f64, s: f64| c * (t - s + 1.0);
        let (fv, av) = (f.values(), a.values());
        let mut u: Vec<f64> = Vec::with_capacity(n);
        for i in 0..n {
            let mut s = av[i];
            for r in 0..i {
                let inner: f64 = (0..r).map(|m| ts.mu_at(m) * k(ts.point(r), ts.point(m)) * phi(u[m])).sum();
                s += ts.mu_at(r) * fv[r] * (u[r] + w(inner));
            }
            u.push(s * rng.random_range(0.5..=1.0));
        }
        let bound = nonlinear_gronwall_bound(&ts, &a, &f, &k, &spec)?;
        Ok(BoundReport::pointwise(u, bound.into_values()))
    }
}

/// Name-keyed certification suites.
pub struct SuiteRegistry {
    suites: Vec<Box<dyn CertificationSuite>>,
}

impl SuiteRegistry {
    pub fn builtin() -> Self {
        SuiteRegistry {
            suites: vec![
                Box::new(Jensen { weighted: true }),
                Box::new(Jensen { weighted: false }),
                Box::new(Holder),
                Box::new(CauchySchwarz),
                Box::new(Minkowski),
                Box::new(Gronwall),
                Box::new(Comparison),
                Box::new(Gronwall2d),
                Box::new(NonlinearGronwall),
            ],
        }
    }

    pub fn register(&mut self, suite: Box<dyn CertificationSuite>) {
        self.suites.retain(|s| s.name() != suite.name());
        self.suites.push(suite);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CertificationSuite> {
        self.suites
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
            .ok_or_else(|| IneqError::UnknownSuite(name.into()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.suites.iter().map(|s| s.name()).collect()
    }
}
