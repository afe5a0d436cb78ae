use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use tsvar_dsl::{parse, Expr, Lagrangian, Point};
use tsvar_fracvar::{solve_frac_el, FracGrid, FracOrders, FracProblem};
use tsvar_inequalities::{run_suite, SuiteRegistry};
use tsvar_timescale::GridFunction;
use tsvar_varcalc::{
    solve_el, solve_el_higher, solve_isoperimetric, sturm_functional, sturm_liouville_first, Catalog, DirectInput,
    DirectRegistry, ExtremalCandidate, HigherOrderProblem, IsoperimetricProblem, VariationalProblem,
};

use crate::config::{ProblemConfig, ProblemSpec, ScaleSpec};
use crate::error::{CliError, Result};
use crate::output::{candidate_table, write_candidates};

/// Output and override flags shared by the solving commands.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub out: PathBuf,
    pub csv: bool,
    pub seed: Option<u64>,
    pub starts: Option<usize>,
    pub tol: Option<f64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { out: PathBuf::from("out"), csv: true, seed: None, starts: None, tol: None }
    }
}

/// Printed report of a command; `exit` is the process status.
#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub text: String,
    pub exit: i32,
}

fn expr(text: &str, what: &str) -> Result<Arc<Expr>> {
    parse(text).map(Arc::new).map_err(|e| CliError::Config(format!("{what}: {e}")))
}

fn apply_overrides(cfg: &mut ProblemConfig, opts: &RunOptions) {
    if let Some(s) = opts.seed {
        cfg.solver.seed = s;
    }
    if let Some(s) = opts.starts {
        cfg.solver.starts = s;
    }
    if let Some(t) = opts.tol {
        cfg.solver.tol = t;
    }
}

fn echo(cfg: &ProblemConfig) -> String {
    let s = &cfg.solver;
    format!(
        "problem: {}\nscale: {:?}\nsolver: starts = {}, seed = {}, tol = {:e}, box = [{}, {}]\n",
        cfg.problem.kind(),
        cfg.scale,
        s.starts,
        s.seed,
        s.tol,
        s.lo,
        s.hi
    )
}

fn finish(cfg: &ProblemConfig, cands: &[ExtremalCandidate], opts: &RunOptions) -> Result<RunReport> {
    if opts.csv {
        write_candidates(&opts.out, cands)?;
    }
    let mut text = echo(cfg);
    writeln!(text, "{} candidate(s)", cands.len()).expect("write");
    text.push_str(&candidate_table(cands));
    Ok(RunReport { text, exit: 0 })
}

/// `frac-solve`: fractional Euler-Lagrange candidates of a `kind = fractional` file.
pub fn frac_solve(mut cfg: ProblemConfig, opts: &RunOptions) -> Result<RunReport> {
    apply_overrides(&mut cfg, opts);
    let ProblemSpec::Fractional { lagrangian, alpha, beta, a_value, b_value } = &cfg.problem else {
        return Err(CliError::Config(format!("frac-solve needs kind = fractional, got {}", cfg.problem.kind())));
    };
    let ScaleSpec::Uniform { a, b, h } = cfg.scale else {
        return Err(CliError::Config("fractional problems need a uniform scale".into()));
    };
    let grid = FracGrid::new(a, b, h)?;
    let p = FracProblem::new(grid, FracOrders::new(*alpha, *beta)?, expr(lagrangian, "lagrangian")?, *a_value, *b_value)?;
    let cands = solve_frac_el(&p, &cfg.solver.multi_start())?;
    finish(&cfg, &cands, opts)
}

/// `var-solve`: classical, isoperimetric or higher-order problems.
pub fn var_solve(mut cfg: ProblemConfig, opts: &RunOptions) -> Result<RunReport> {
    apply_overrides(&mut cfg, opts);
    let ts = cfg.scale.build()?;
    let ms = cfg.solver.multi_start();
    let cands = match &cfg.problem {
        ProblemSpec::Classical { lagrangian, a_value, b_value } => {
            solve_el(&VariationalProblem::new(ts, expr(lagrangian, "lagrangian")?, *a_value, *b_value)?, &ms)?
        }
        ProblemSpec::Isoperimetric { lagrangian, constraint, level, a_value, b_value } => {
            let base = VariationalProblem::new(ts, expr(lagrangian, "lagrangian")?, *a_value, *b_value)?;
            let p = IsoperimetricProblem { base, constraint: expr(constraint, "constraint")?, level: *level };
            solve_isoperimetric(&p, &ms)?
        }
        ProblemSpec::Higher { catalog, left, right } => {
            let l = Catalog::builtin().get(catalog)?;
            solve_el_higher(&HigherOrderProblem::new(ts, l, left.clone(), right.clone())?, &ms)?
        }
        ProblemSpec::Fractional { .. } => {
            return Err(CliError::Config("fractional problems are solved by frac-solve".into()))
        }
    };
    finish(&cfg, &cands, opts)
}

/// Scalar function from an expression in `t` (also bound to `u`).
fn scalar_fn(text: &str, what: &str) -> Result<Arc<dyn Fn(f64) -> f64 + Send + Sync>> {
    let e = expr(text, what)?;
    Ok(Arc::new(move |x| e.value(Point::new(x, x, 0.0, 0.0)).unwrap_or(f64::NAN)))
}

fn two_columns(name: &str, g: &GridFunction) -> String {
    let mut s = format!("t,{name}\n");
    for (t, y) in g.points().iter().zip(g.values()) {
        writeln!(s, "{t:e},{y:e}").expect("write");
    }
    s
}

/// Parameters of the `direct` command.
#[derive(Debug, Clone)]
pub struct DirectArgs {
    pub kind: String,
    pub scale: ScaleSpec,
    pub phi: String,
    pub b_value: f64,
    pub alpha: Option<f64>,
}

/// `direct`: closed-form extremals of the Jensen-type functionals.
pub fn direct(args: &DirectArgs, opts: &RunOptions) -> Result<RunReport> {
    let method = DirectRegistry::builtin().get(&args.kind)?;
    let input = DirectInput {
        scale: args.scale.build()?,
        phi: scalar_fn(&args.phi, "phi")?,
        b_value: args.b_value,
        alpha: args.alpha,
    };
    let s = method.solve(&input)?;
    let mut text = format!("kind: {}\nscale: {:?}\nphi = {}, B = {}\n", args.kind, args.scale, args.phi, args.b_value);
    writeln!(text, "{:?}: F = {:.15}, C = {}", s.extremum, s.value, s.c).expect("write");
    writeln!(text, "{:>12}  {:>20}", "t", "y").expect("write");
    for (t, y) in s.y.points().iter().zip(s.y.values()) {
        writeln!(text, "{t:>12}  {y:>20.12}").expect("write");
    }
    if opts.csv {
        fs::create_dir_all(&opts.out)?;
        fs::write(opts.out.join("direct.csv"), two_columns("y", &s.y))?;
    }
    Ok(RunReport { text, exit: 0 })
}

/// `sturm`: first eigenpair with potential `q(t)`.
pub fn sturm(scale: &ScaleSpec, q: &str, opts: &RunOptions) -> Result<RunReport> {
    let ts = scale.build()?;
    let qf = scalar_fn(q, "q")?;
    let qg = GridFunction::from_fn(ts.clone(), |t| qf(t));
    if qg.values().iter().any(|x| !x.is_finite()) {
        return Err(CliError::Config(format!("q = {q} is not finite on the grid")));
    }
    let s = sturm_liouville_first(&ts, &qg)?;
    let j = sturm_functional(&qg, &s.y1)?;
    let mut text = format!("scale: {scale:?}\nq = {q}\nlambda1 = {:.15}\nJ[y1] = {j:.15}\n", s.lambda1);
    for (t, y) in s.y1.points().iter().zip(s.y1.values()) {
        writeln!(text, "{t:>12}  {y:>20.12}").expect("write");
    }
    if opts.csv {
        fs::create_dir_all(&opts.out)?;
        fs::write(opts.out.join("sturm.csv"), two_columns("y1", &s.y1))?;
    }
    Ok(RunReport { text, exit: 0 })
}

/// `ineq-check`: randomized certification; `suite = "all"` runs every registered suite.
pub fn ineq_check(suite: &str, trials: usize, seed: u64, opts: &RunOptions) -> Result<RunReport> {
    let reg = SuiteRegistry::builtin();
    let names: Vec<&str> = if suite == "all" { reg.names() } else { vec![reg.get(suite)?.name()] };
    let mut text = format!("trials = {trials}, seed = {seed}\n");
    let mut csv = String::from("suite,trials,held,worst_margin,all_hold\n");
    let mut ok = true;
    for name in names {
        let r = run_suite(reg.get(name)?, trials, seed)?;
        ok &= r.all_hold();
        let verdict = if r.all_hold() { "all hold" } else { "VIOLATED" };
        writeln!(text, "{name:<20} {}/{} {verdict}, worst margin {:e}", r.held, r.trials, r.worst_margin).expect("write");
        writeln!(csv, "{name},{},{},{:e},{}", r.trials, r.held, r.worst_margin, r.all_hold()).expect("write");
    }
    if opts.csv {
        fs::create_dir_all(&opts.out)?;
        fs::write(opts.out.join("ineq_report.csv"), csv)?;
    }
    Ok(RunReport { text, exit: if ok { 0 } else { 1 } })
}
