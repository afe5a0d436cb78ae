use tsvar_timescale::TimeScale;

use crate::error::Result;

/// Values of `tau -> H_k(tau, s)` on every grid point, by repeated delta integration from `s`.
pub fn generalized_polynomials(ts: &TimeScale, k: usize, s: f64) -> Result<Vec<f64>> {
    let is = ts.index_of(s)?;
    let n = ts.len();
    let mut h = vec![1.0; n];
    for _ in 0..k {
        let mut next = vec![0.0; n];
        for j in is + 1..n {
            next[j] = next[j - 1] + ts.mu_at(j - 1) * h[j - 1];
        }
        for j in (0..is).rev() {
            next[j] = next[j + 1] - ts.mu_at(j) * h[j];
        }
        h = next;
    }
    Ok(h)
}

/// `H_k(t, s)` with `H_0 = 1` and `H_{k+1}(t, s) = int_s^t H_k(tau, s) Delta tau`.
pub fn generalized_polynomial_h(ts: &TimeScale, k: usize, t: f64, s: f64) -> Result<f64> {
    let it = ts.index_of(t)?;
    Ok(generalized_polynomials(ts, k, s)?[it])
}
