use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use tsvar_varcalc::ExtremalCandidate;

use crate::error::Result;

pub const CSV_HEADER: &str = "candidate_id,t,y,residual_norm,legendre_ok,functional_value";

fn verdict(c: &ExtremalCandidate) -> &'static str {
    match c.legendre_ok() {
        Some(true) => "true",
        Some(false) => "false",
        None => "na",
    }
}

/// One row per candidate and grid point; candidate ids start at 1.
pub fn candidates_csv(cands: &[ExtremalCandidate]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for (k, c) in cands.iter().enumerate() {
        for (t, y) in c.y.points().iter().zip(c.y.values()) {
            writeln!(s, "{},{t:e},{y:e},{:e},{},{:e}", k + 1, c.residual_norm, verdict(c), c.functional_value)
                .expect("write to string");
        }
    }
    s
}

/// Two columns `t y` for plotting.
pub fn extremal_dat(c: &ExtremalCandidate) -> String {
    let mut s = String::new();
    for (t, y) in c.y.points().iter().zip(c.y.values()) {
        writeln!(s, "{t:.12e} {y:.12e}").expect("write to string");
    }
    s
}

/// Writes `candidates.csv` and `extremal_<k>.dat` into `dir`.
pub fn write_candidates(dir: &Path, cands: &[ExtremalCandidate]) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join("candidates.csv"), candidates_csv(cands))?;
    for (k, c) in cands.iter().enumerate() {
        fs::write(dir.join(format!("extremal_{}.dat", k + 1)), extremal_dat(c))?;
    }
    Ok(())
}

/// Human-readable table: one line per candidate with its grid values.
pub fn candidate_table(cands: &[ExtremalCandidate]) -> String {
    let mut s = String::new();
    writeln!(s, "{:>4}  {:>12}  {:>10}  {:>8}  y", "id", "functional", "residual", "legendre").expect("write");
    for (k, c) in cands.iter().enumerate() {
        let ys: Vec<String> = c.y.values().iter().map(|y| format!("{y:.7}")).collect();
        let lam = c.multiplier.map(|l| format!("  lambda = {l:.9}")).unwrap_or_default();
        writeln!(
            s,
            "{:>4}  {:>12.7}  {:>10.2e}  {:>8}  [{}]{lam}",
            k + 1,
            c.functional_value,
            c.residual_norm,
            verdict(c),
            ys.join(", ")
        )
        .expect("write");
    }
    s
}
