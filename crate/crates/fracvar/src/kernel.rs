use tsvar_special::{gamma_fn, h_factorial};

use crate::error::Result;

/// Weights of the fractional sum of order `order` on a uniform grid.
///
/// On hZ the kernel `(t - sigma(s))_h^(order-1)` depends only on the index
/// distance, so one row of length `len` covers the whole triangular table.
/// `w[0] = h^order` and `w[m] = h (((m - 1 + order) h)_h^(order-1)) / Gamma(order)`.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelTable {
    order: f64,
    h: f64,
    w: Vec<f64>,
}

impl KernelTable {
    pub fn new(h: f64, order: f64, len: usize) -> Result<Self> {
        let mut w = vec![0.0; len.max(1)];
        if order == 0.0 {
            w[0] = 1.0;
        } else {
            w[0] = h.powf(order);
            let g = gamma_fn(order)?;
            for (m, wm) in w.iter_mut().enumerate().skip(1) {
                *wm = h * h_factorial((m as f64 - 1.0 + order) * h, order - 1.0, h)? / g;
            }
        }
        Ok(KernelTable { order, h, w })
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Weight at index distance `m`.
    pub fn weight(&self, m: usize) -> f64 {
        self.w[m]
    }

    /// Left sums `F_i = sum_{k <= i} w[i - k] f_k`, i.e. the order-`order` left sum at `t_i + order h`.
    pub fn left_sums(&self, f: &[f64]) -> Vec<f64> {
        (0..f.len()).map(|i| (0..=i).map(|k| self.w[i - k] * f[k]).sum()).collect()
    }

    /// Right sums `G_i = sum_{k >= i} w[k - i] f_k`, the right sum at `t_i - order h`.
    pub fn right_sums(&self, f: &[f64]) -> Vec<f64> {
        (0..f.len()).map(|i| (i..f.len()).map(|k| self.w[k - i] * f[k]).sum()).collect()
    }

    /// Left difference of order `1 - order`: forward difference of the left sums.
    pub fn left_diff(&self, f: &[f64]) -> Vec<f64> {
        let s = self.left_sums(f);
        s.windows(2).map(|p| (p[1] - p[0]) / self.h).collect()
    }

    /// Right difference of order `1 - order`: minus the forward difference of the right sums.
    pub fn right_diff(&self, f: &[f64]) -> Vec<f64> {
        let s = self.right_sums(f);
        s.windows(2).map(|p| -(p[1] - p[0]) / self.h).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_follow_the_rising_factorial_recurrence() {
        let (h, g) = (0.25, 0.3);
        let k = KernelTable::new(h, g, 12).unwrap();
        let mut want = h.powf(g);
        for m in 0..12 {
            assert!((k.weight(m) - want).abs() < 1e-13 * want, "m = {m}");
            want *= (m as f64 + g) / (m as f64 + 1.0);
        }
    }

    #[test]
    fn zero_order_is_identity() {
        let k = KernelTable::new(0.5, 0.0, 4).unwrap();
        let f = [1.0, -2.0, 4.0, 3.0];
        assert_eq!(k.left_sums(&f), f.to_vec());
        assert_eq!(k.right_sums(&f), f.to_vec());
        assert_eq!(k.left_diff(&f), vec![-6.0, 12.0, -2.0]);
        assert_eq!(k.right_diff(&f), vec![6.0, -12.0, 2.0]);
    }
}
