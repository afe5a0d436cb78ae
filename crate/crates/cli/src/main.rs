use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use tsvar_cli::*;

#[derive(Parser)]
#[command(name = "tsvar", version, about = "Variational problems and dynamic inequalities on time scales")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// Directory for CSV and plot data.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Write output files (default).
    #[arg(long, overrides_with = "no_csv")]
    csv: bool,
    /// Print only; write no files.
    #[arg(long = "no-csv")]
    no_csv: bool,
}

#[derive(Args)]
struct Solve {
    /// Problem file with [scale], [problem] and [solver] sections.
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    starts: Option<usize>,
    /// Newton tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    output: Output,
}

#[derive(Subcommand)]
enum Command {
    /// Fractional Euler-Lagrange candidates of a `kind = fractional` problem.
    FracSolve(Solve),
    /// Classical, isoperimetric or higher-order problems.
    VarSolve(Solve),
    /// Closed-form extremals of the power, exp and entropy functionals.
    Direct {
        #[arg(long, default_value = "entropy")]
        kind: String,
        #[arg(long, default_value = "uniform(0,5,1)")]
        scale: ScaleSpec,
        /// Coefficient phi as an expression in t.
        #[arg(long, default_value = "2*t + 1")]
        phi: String,
        /// Right boundary value y(b).
        #[arg(long = "b", default_value = "25", value_parser = parse_number)]
        b_value: f64,
        /// Exponent of the power kind.
        #[arg(long, value_parser = parse_number)]
        alpha: Option<f64>,
        #[command(flatten)]
        output: Output,
    },
    /// First Sturm-Liouville eigenpair with zero boundary values.
    Sturm {
        /// Potential q as an expression in t.
        #[arg(long, default_value = "0")]
        q: String,
        #[arg(long)]
        scale: ScaleSpec,
        #[command(flatten)]
        output: Output,
    },
    /// Randomized certification of the dynamic inequalities.
    IneqCheck {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Hard-coded reproductions with PASS/FAIL verdicts; `all` runs every acceptance criterion.
    Repro {
        /// Reproduction name, `all` or `list`.
        name: String,
    },
}

fn options(o: &Output, seed: Option<u64>, starts: Option<usize>, tol: Option<f64>) -> RunOptions {
    RunOptions { out: o.out.clone(), csv: !o.no_csv, seed, starts, tol }
}

fn repro(name: &str) -> i32 {
    let reg = ReproRegistry::builtin();
    if name == "list" {
        for r in reg.iter() {
            let c = r.criterion().map(|c| format!("criterion {c}")).unwrap_or_default();
            println!("{:<22} {:<13} {}", r.name(), c, r.summary());
        }
        return 0;
    }
    let chosen: Vec<&dyn Reproduction> = if name == "all" {
        (1..=11).filter_map(|id| reg.criterion(id)).collect()
    } else {
        match reg.get(name) {
            Some(r) => vec![r],
            None => {
                eprintln!("unknown reproduction '{name}'; available: {}", reg.names().join(", "));
                return 2;
            }
        }
    };
    let mut ok = true;
    for r in chosen {
        let out = execute(r);
        ok &= out.passed();
        println!("== {}: {}", r.name(), r.summary());
        print!("{}", out.render());
        println!("{}: {}", r.name(), if out.passed() { "PASS" } else { "FAIL" });
    }
    if ok {
        0
    } else {
        1
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = match &cli.command {
        Command::FracSolve(s) => ProblemConfig::load(&s.config)
            .and_then(|cfg| frac_solve(cfg, &options(&s.output, s.seed, s.starts, s.tol))),
        Command::VarSolve(s) => ProblemConfig::load(&s.config)
            .and_then(|cfg| var_solve(cfg, &options(&s.output, s.seed, s.starts, s.tol))),
        Command::Direct { kind, scale, phi, b_value, alpha, output } => {
            let args = DirectArgs { kind: kind.clone(), scale: scale.clone(), phi: phi.clone(), b_value: *b_value, alpha: *alpha };
            direct(&args, &options(output, None, None, None))
        }
        Command::Sturm { q, scale, output } => sturm(scale, q, &options(output, None, None, None)),
        Command::IneqCheck { suite, trials, seed, output } => ineq_check(suite, *trials, *seed, &options(output, None, None, None)),
        Command::Repro { name } => return ExitCode::from(repro(name) as u8),
    };
    match result {
        Ok(report) => {
            print!("{}", report.text);
            eprintln!("elapsed: {:.3} s", start.elapsed().as_secs_f64());
            ExitCode::from(report.exit as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
