use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::SolveError;
use crate::newton::{newton, NewtonConfig, Root};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "TSVAR_THREADS";

#[derive(Debug, Clone, PartialEq)]
pub struct MultiStartConfig {
    pub starts: usize,
    pub seed: u64,
    /// Box for random starts, per unknown.
    pub lo: f64,
    pub hi: f64,
    /// Roots closer than this in max norm are merged.
    pub dedup_tol: f64,
    pub newton: NewtonConfig,
    /// Starts tried before the random ones.
    pub extra_starts: Vec<Vec<f64>>,
    /// Thread cap; `None` reads `TSVAR_THREADS`, then uses the rayon default.
    pub threads: Option<usize>,
}

impl Default for MultiStartConfig {
    fn default() -> Self {
        MultiStartConfig {
            starts: 64,
            seed: 0,
            lo: -2.0,
            hi: 3.0,
            dedup_tol: 1e-6,
            newton: NewtonConfig::default(),
            extra_starts: Vec::new(),
            threads: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultiStartReport {
    /// Distinct roots in order of the first start that reached them.
    pub roots: Vec<Root>,
    pub attempts: usize,
    /// Failed starts with their errors, in start order.
    pub failures: Vec<(usize, SolveError)>,
}

impl MultiStartReport {
    /// True when some start failed on a singular Jacobian and none converged.
    pub fn all_singular(&self) -> bool {
        self.roots.is_empty()
            && !self.failures.is_empty()
            && self.failures.iter().all(|(_, e)| matches!(e, SolveError::SingularJacobian { .. }))
    }
}

/// Start vectors, extra ones first; a pure function of the config.
pub fn start_points(dim: usize, cfg: &MultiStartConfig) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = cfg.extra_starts.clone();
    for _ in 0..cfg.starts {
        out.push((0..dim).map(|_| rng.random_range(cfg.lo..=cfg.hi)).collect());
    }
    out
}

fn thread_cap(cfg: &MultiStartConfig) -> Option<usize> {
    cfg.threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|s| s.trim().parse().ok()))
        .filter(|&n| n > 0)
}

/// Runs Newton from every start and merges results in start order.
pub fn multi_start<F, E>(dim: usize, f: &F, cfg: &MultiStartConfig) -> MultiStartReport
where
    F: Fn(&[f64]) -> std::result::Result<Vec<f64>, E> + Sync,
    E: Display,
{
    let starts = start_points(dim, cfg);
    let run = || -> Vec<_> { starts.par_iter().map(|x0| newton(f, x0, &cfg.newton)).collect() };
    let results = match thread_cap(cfg).and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(run),
        None => run(),
    };
    let mut roots: Vec<Root> = Vec::new();
    let mut failures = Vec::new();
    for (k, res) in results.into_iter().enumerate() {
        match res {
            Ok(root) => {
                let dup = roots.iter().any(|r| {
                    r.x.iter().zip(&root.x).all(|(a, b)| (a - b).abs() < cfg.dedup_tol)
                });
                if !dup {
                    roots.push(root);
                }
            }
            Err(e) => failures.push((k, e)),
        }
    }
    MultiStartReport { roots, attempts: starts.len(), failures }
}

#[cfg(test)]
mod tests {
    use super::*;

    type R = std::result::Result<Vec<f64>, String>;

    fn cubic(x: &[f64]) -> R {
        Ok(vec![(x[0] - 1.0) * (x[0] + 1.0) * (x[0] - 2.0)])
    }

    #[test]
    fn finds_all_roots_deterministically() {
        let cfg = MultiStartConfig { starts: 40, seed: 3, ..Default::default() };
        let a = multi_start(1, &cubic, &cfg);
        let mut xs: Vec<f64> = a.roots.iter().map(|r| r.x[0]).collect();
        xs.sort_by(f64::total_cmp);
        assert_eq!(xs.len(), 3);
        for (x, want) in xs.iter().zip([-1.0, 1.0, 2.0]) {
            assert!((x - want).abs() < 1e-9);
        }
        let serial = multi_start(1, &cubic, &MultiStartConfig { threads: Some(1), ..cfg.clone() });
        assert_eq!(a, serial);
    }

    #[test]
    fn extra_starts_come_first() {
        let cfg = MultiStartConfig { starts: 2, extra_starts: vec![vec![7.0]], ..Default::default() };
        let pts = start_points(1, &cfg);
        assert_eq!(pts.len(), 3);
        assert_eq!(pts[0], vec![7.0]);
        assert!(pts[1..].iter().all(|p| (-2.0..=3.0).contains(&p[0])));
    }
}
