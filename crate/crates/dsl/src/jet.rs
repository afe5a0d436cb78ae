use std::ops::{Add, Mul, Neg, Sub};

/// Hessian slot order: uu, uv, uw, vv, vw, ww.
const SLOT: [[usize; 3]; 3] = [[0, 1, 2], [1, 3, 4], [2, 4, 5]];

/// Value, gradient and Hessian with respect to `(u, v, w)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet2 {
    pub value: f64,
    pub grad: [f64; 3],
    pub hess: [f64; 6],
}

impl Jet2 {
    pub fn constant(value: f64) -> Self {
        Jet2 { value, grad: [0.0; 3], hess: [0.0; 6] }
    }

    /// Seed for active variable `k` (0 = u, 1 = v, 2 = w).
    pub fn variable(value: f64, k: usize) -> Self {
        let mut grad = [0.0; 3];
        grad[k] = 1.0;
        Jet2 { value, grad, hess: [0.0; 6] }
    }

    /// Second partial `d2 / (dx_i dx_j)`.
    pub fn second(&self, i: usize, j: usize) -> f64 {
        self.hess[SLOT[i][j]]
    }

    pub fn l_u(&self) -> f64 {
        self.grad[0]
    }
    pub fn l_v(&self) -> f64 {
        self.grad[1]
    }
    pub fn l_w(&self) -> f64 {
        self.grad[2]
    }
    pub fn l_uu(&self) -> f64 {
        self.hess[0]
    }
    pub fn l_uv(&self) -> f64 {
        self.hess[1]
    }
    pub fn l_uw(&self) -> f64 {
        self.hess[2]
    }
    pub fn l_vv(&self) -> f64 {
        self.hess[3]
    }
    pub fn l_vw(&self) -> f64 {
        self.hess[4]
    }
    pub fn l_ww(&self) -> f64 {
        self.hess[5]
    }

    pub fn is_finite(&self) -> bool {
        self.value.is_finite() && self.grad.iter().chain(&self.hess).all(|x| x.is_finite())
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, o: Jet2) -> Jet2 {
        let mut r = self;
        r.value += o.value;
        r.grad.iter_mut().zip(o.grad).for_each(|(a, b)| *a += b);
        r.hess.iter_mut().zip(o.hess).for_each(|(a, b)| *a += b);
        r
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, o: Jet2) -> Jet2 {
        self + (-o)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        Jet2 {
            value: -self.value,
            grad: self.grad.map(|x| -x),
            hess: self.hess.map(|x| -x),
        }
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, o: Jet2) -> Jet2 {
        let mut grad = [0.0; 3];
        for k in 0..3 {
            grad[k] = self.grad[k] * o.value + self.value * o.grad[k];
        }
        let mut hess = [0.0; 6];
        for i in 0..3 {
            for j in i..3 {
                let s = SLOT[i][j];
                hess[s] = self.hess[s] * o.value
                    + self.value * o.hess[s]
                    + self.grad[i] * o.grad[j]
                    + self.grad[j] * o.grad[i];
            }
        }
        Jet2 { value: self.value * o.value, grad, hess }
    }
}

/// Number type the evaluator runs on.
pub trait Scalar:
    Copy + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn constant(c: f64) -> Self;
    fn value(&self) -> f64;
    /// Composes with a scalar function given its value and first two derivatives at `self.value()`.
    fn lift(&self, f0: f64, f1: f64, f2: f64) -> Self;
    fn is_finite(&self) -> bool;
}

impl Scalar for f64 {
    fn constant(c: f64) -> Self {
        c
    }
    fn value(&self) -> f64 {
        *self
    }
    fn lift(&self, f0: f64, _f1: f64, _f2: f64) -> Self {
        f0
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

impl Scalar for Jet2 {
    fn constant(c: f64) -> Self {
        Jet2::constant(c)
    }
    fn value(&self) -> f64 {
        self.value
    }
    fn lift(&self, f0: f64, f1: f64, f2: f64) -> Self {
        let grad = self.grad.map(|g| f1 * g);
        let mut hess = [0.0; 6];
        for i in 0..3 {
            for j in i..3 {
                let s = SLOT[i][j];
                hess[s] = f2 * self.grad[i] * self.grad[j] + f1 * self.hess[s];
            }
        }
        Jet2 { value: f0, grad, hess }
    }
    fn is_finite(&self) -> bool {
        Jet2::is_finite(self)
    }
}
