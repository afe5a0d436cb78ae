use crate::error::{Result, SolveError};

/// Solves `g(x) = target` for nondecreasing `g` on a bracket `[lo, hi]` by bisection.
pub fn invert_increasing<G: Fn(f64) -> f64>(g: G, target: f64, lo: f64, hi: f64) -> Result<f64> {
    let (glo, ghi) = (g(lo), g(hi));
    if !(glo <= target && target <= ghi) {
        return Err(SolveError::RootNotBracketed { target, lo, hi });
    }
    if glo == target {
        return Ok(lo);
    }
    if ghi == target {
        return Ok(hi);
    }
    let (mut a, mut b) = (lo, hi);
    for _ in 0..2000 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        if g(m) < target {
            a = m;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Grows `hi` geometrically from `start` until `g(hi) >= target` or `hi` exceeds `limit`.
pub fn bracket_above<G: Fn(f64) -> f64>(g: &G, target: f64, start: f64, limit: f64) -> Result<f64> {
    let mut hi = start.max(f64::MIN_POSITIVE);
    while hi <= limit {
        let v = g(hi);
        if v.is_finite() && v >= target {
            return Ok(hi);
        }
        if v.is_nan() {
            break;
        }
        hi *= 2.0;
    }
    Err(SolveError::RootNotBracketed { target, lo: start, hi: limit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverts_a_cubic() {
        let x = invert_increasing(|x| x * x * x, 27.0, 0.0, 10.0).unwrap();
        assert!((x - 3.0).abs() < 1e-13);
        assert!(invert_increasing(|x| x, 11.0, 0.0, 10.0).is_err());
        let hi = bracket_above(&|x: f64| x.ln(), 50.0, 1.0, 1e300).unwrap();
        assert!(hi.ln() >= 50.0);
        assert!(bracket_above(&|x: f64| 1.0 - 1.0 / x, 2.0, 1.0, 1e300).is_err());
    }
}
