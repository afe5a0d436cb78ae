use crate::ast::{BinOp, Constant, Expr, Func, Var};
use crate::error::{DslError, Result};
use crate::jet::{Jet2, Scalar};

/// Point at which a Lagrangian is evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub t: f64,
    pub u: f64,
    pub v: f64,
    pub w: f64,
}

impl Point {
    pub fn new(t: f64, u: f64, v: f64, w: f64) -> Self {
        Point { t, u, v, w }
    }
}

fn domain(func: &'static str, arg: f64) -> DslError {
    DslError::Domain { func, arg }
}

fn checked<S: Scalar>(func: &'static str, arg: f64, r: S) -> Result<S> {
    if r.is_finite() {
        Ok(r)
    } else {
        Err(domain(func, arg))
    }
}

fn is_integer(c: f64) -> bool {
    c.fract() == 0.0 && c.abs() < 1e15
}

/// `x^c` for a constant exponent.
fn pow_const<S: Scalar>(x: S, c: f64) -> Result<S> {
    let a = x.value();
    if c == 0.0 {
        return Ok(S::constant(1.0));
    }
    if c == 1.0 {
        return Ok(x);
    }
    if is_integer(c) {
        if a == 0.0 && c < 0.0 {
            return Err(domain("^", a));
        }
        let n = c as i32;
        let p = |k: i32| if k < 0 && a == 0.0 { 0.0 } else { a.powi(k) };
        return checked("^", a, x.lift(p(n), c * p(n - 1), c * (c - 1.0) * p(n - 2)));
    }
    if a < 0.0 || (a == 0.0 && c < 0.0) {
        return Err(domain("^", a));
    }
    let p = |k: f64| if a == 0.0 { if k > 0.0 { 0.0 } else { f64::INFINITY } } else { a.powf(k) };
    checked("^", a, x.lift(p(c), c * p(c - 1.0), c * (c - 1.0) * p(c - 2.0)))
}

fn recip<S: Scalar>(x: S) -> Result<S> {
    let a = x.value();
    if a == 0.0 {
        return Err(domain("/", a));
    }
    checked("/", a, x.lift(1.0 / a, -1.0 / (a * a), 2.0 / (a * a * a)))
}

fn apply<S: Scalar>(func: Func, x: S) -> Result<S> {
    let a = x.value();
    let r = match func {
        Func::Ln => {
            if a <= 0.0 {
                return Err(domain("ln", a));
            }
            x.lift(a.ln(), 1.0 / a, -1.0 / (a * a))
        }
        Func::Exp => {
            let e = a.exp();
            x.lift(e, e, e)
        }
        Func::Sin => x.lift(a.sin(), a.cos(), -a.sin()),
        Func::Cos => x.lift(a.cos(), -a.sin(), -a.cos()),
        Func::Sqrt => {
            if a <= 0.0 {
                return Err(domain("sqrt", a));
            }
            let s = a.sqrt();
            x.lift(s, 0.5 / s, -0.25 / (s * a))
        }
        Func::Abs => {
            if a == 0.0 {
                return Err(domain("abs", a));
            }
            x.lift(a.abs(), a.signum(), 0.0)
        }
    };
    checked(func.name(), a, r)
}

fn eval_generic<S: Scalar>(e: &Expr, t: f64, vars: &[S; 3]) -> Result<S> {
    Ok(match e {
        Expr::Num(x) => S::constant(*x),
        Expr::Const(Constant::Pi) => S::constant(std::f64::consts::PI),
        Expr::Const(Constant::E) => S::constant(std::f64::consts::E),
        Expr::Var(Var::T) => S::constant(t),
        Expr::Var(Var::U) => vars[0],
        Expr::Var(Var::V) => vars[1],
        Expr::Var(Var::W) => vars[2],
        Expr::Neg(a) => -eval_generic(a, t, vars)?,
        Expr::Call(f, a) => apply(*f, eval_generic(a, t, vars)?)?,
        Expr::Bin(op, a, b) => {
            let x = eval_generic(a, t, vars)?;
            match op {
                BinOp::Add => x + eval_generic(b, t, vars)?,
                BinOp::Sub => x - eval_generic(b, t, vars)?,
                BinOp::Mul => x * eval_generic(b, t, vars)?,
                BinOp::Div => x * recip(eval_generic(b, t, vars)?)?,
                BinOp::Pow => {
                    if b.variables().iter().any(|v| *v != Var::T) {
                        // Variable exponent: a^b = exp(b ln a).
                        let y = eval_generic(b, t, vars)?;
                        let base = x.value();
                        if base <= 0.0 {
                            return Err(domain("^", base));
                        }
                        apply(Func::Exp, y * apply(Func::Ln, x)?)?
                    } else {
                        let c = eval_generic::<f64>(b, t, &[0.0; 3])?;
                        pow_const(x, c)?
                    }
                }
            }
        }
    })
}

/// Value only.
pub fn eval(e: &Expr, p: Point) -> Result<f64> {
    let r = eval_generic(e, p.t, &[p.u, p.v, p.w])?;
    checked("eval", r, r)
}

/// Value, gradient and Hessian in `(u, v, w)`.
pub fn eval_jet2(e: &Expr, p: Point) -> Result<Jet2> {
    let vars = [Jet2::variable(p.u, 0), Jet2::variable(p.v, 1), Jet2::variable(p.w, 2)];
    let r = eval_generic(e, p.t, &vars)?;
    checked("eval", r.value, r)
}

/// A Lagrangian `L(t, u, v, w)` with second-order partials.
pub trait Lagrangian: Send + Sync {
    fn value(&self, p: Point) -> Result<f64>;
    fn jet(&self, p: Point) -> Result<Jet2>;
}

impl Lagrangian for Expr {
    fn value(&self, p: Point) -> Result<f64> {
        eval(self, p)
    }
    fn jet(&self, p: Point) -> Result<Jet2> {
        eval_jet2(self, p)
    }
}
