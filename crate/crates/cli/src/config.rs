use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::Arc;

use tsvar_timescale::TimeScale;

use crate::error::{CliError, Result};

/// Decimal or simple fraction such as `1/30` or `-3/4`.
pub fn parse_number(s: &str) -> std::result::Result<f64, String> {
    let s = s.trim();
    let bad = || format!("not a number: '{s}'");
    let x = match s.split_once('/') {
        Some((n, d)) => {
            let n: f64 = n.trim().parse().map_err(|_| bad())?;
            let d: f64 = d.trim().parse().map_err(|_| bad())?;
            if d == 0.0 {
                return Err(format!("zero denominator in '{s}'"));
            }
            n / d
        }
        None => s.parse().map_err(|_| bad())?,
    };
    if x.is_finite() {
        Ok(x)
    } else {
        Err(bad())
    }
}

fn parse_list(s: &str) -> std::result::Result<Vec<f64>, String> {
    s.split(',').filter(|p| !p.trim().is_empty()).map(parse_number).collect()
}

#[derive(Debug, Clone)]
struct Entry {
    line: usize,
    value: String,
}

/// Flat `key = value` file with `[section]` headers and `#` comments.
#[derive(Debug, Clone, Default)]
pub struct Config {
    sections: BTreeMap<String, BTreeMap<String, Entry>>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Config::default();
        let mut current: Option<String> = None;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            if let Some(name) = body.strip_prefix('[') {
                let name = name
                    .strip_suffix(']')
                    .ok_or_else(|| CliError::Config(format!("line {line}: unterminated section header")))?
                    .trim()
                    .to_string();
                if cfg.sections.contains_key(&name) {
                    return Err(CliError::Config(format!("line {line}: duplicate section [{name}]")));
                }
                cfg.sections.insert(name.clone(), BTreeMap::new());
                current = Some(name);
                continue;
            }
            let (key, value) = body
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {line}: expected key = value")))?;
            let section = current
                .as_ref()
                .ok_or_else(|| CliError::Config(format!("line {line}: key outside any section")))?;
            let value = value.trim().trim_matches('"').to_string();
            let map = cfg.sections.get_mut(section).expect("section exists");
            if map.insert(key.trim().to_string(), Entry { line, value }).is_some() {
                return Err(CliError::Config(format!("line {line}: duplicate key '{}'", key.trim())));
            }
        }
        Ok(cfg)
    }

    pub fn has_section(&self, section: &str) -> bool {
        self.sections.contains_key(section)
    }

    pub fn get(&self, section: &str, key: &str) -> Option<&str> {
        self.sections.get(section)?.get(key).map(|e| e.value.as_str())
    }

    fn err(&self, section: &str, key: &str, msg: String) -> CliError {
        let line = self.sections.get(section).and_then(|m| m.get(key)).map(|e| e.line).unwrap_or(0);
        CliError::Config(format!("line {line}: [{section}] {key}: {msg}"))
    }

    pub fn require(&self, section: &str, key: &str) -> Result<&str> {
        self.get(section, key).ok_or_else(|| CliError::Config(format!("missing [{section}] {key}")))
    }

    pub fn number(&self, section: &str, key: &str) -> Result<Option<f64>> {
        self.get(section, key)
            .map(|v| parse_number(v).map_err(|m| self.err(section, key, m)))
            .transpose()
    }

    pub fn require_number(&self, section: &str, key: &str) -> Result<f64> {
        self.number(section, key)?.ok_or_else(|| CliError::Config(format!("missing [{section}] {key}")))
    }

    pub fn count(&self, section: &str, key: &str) -> Result<Option<u64>> {
        self.get(section, key)
            .map(|v| v.parse::<u64>().map_err(|_| self.err(section, key, format!("not a nonnegative integer: '{v}'"))))
            .transpose()
    }

    pub fn list(&self, section: &str, key: &str) -> Result<Vec<f64>> {
        parse_list(self.require(section, key)?).map_err(|m| self.err(section, key, m))
    }

    /// Rejects keys outside `allowed`.
    pub fn check_keys(&self, section: &str, allowed: &[&str]) -> Result<()> {
        if let Some(map) = self.sections.get(section) {
            if let Some((k, e)) = map.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
                return Err(CliError::Config(format!("line {}: unknown key [{section}] {k}", e.line)));
            }
        }
        Ok(())
    }

    pub fn check_sections(&self, allowed: &[&str]) -> Result<()> {
        match self.sections.keys().find(|s| !allowed.contains(&s.as_str())) {
            Some(s) => Err(CliError::Config(format!("unknown section [{s}]"))),
            None => Ok(()),
        }
    }
}

/// A grid description, written `uniform(a,b,h)`, `geometric(q,kmin,kmax)` or `explicit(t0,t1,...)`.
#[derive(Debug, Clone, PartialEq)]
pub enum ScaleSpec {
    Uniform { a: f64, b: f64, h: f64 },
    Geometric { q: f64, kmin: i32, kmax: i32 },
    Explicit(Vec<f64>),
}

impl ScaleSpec {
    pub fn build(&self) -> Result<Arc<TimeScale>> {
        let ts = match self {
            ScaleSpec::Uniform { a, b, h } => TimeScale::uniform(*a, *b, *h),
            ScaleSpec::Geometric { q, kmin, kmax } => TimeScale::geometric(*q, *kmin, *kmax),
            ScaleSpec::Explicit(p) => TimeScale::explicit(p.clone()),
        };
        ts.map(Arc::new).map_err(|e| CliError::Config(format!("scale: {e}")))
    }

    /// From a `[scale]` section: `kind` plus `a, b, h`, `q, kmin, kmax` or `points`.
    pub fn from_section(cfg: &Config) -> Result<Self> {
        let kind = cfg.require("scale", "kind")?;
        let int = |key: &str| -> Result<i32> {
            let x = cfg.require_number("scale", key)?;
            if x.fract() != 0.0 || x.abs() > 1e6 {
                return Err(CliError::Config(format!("[scale] {key} must be an integer")));
            }
            Ok(x as i32)
        };
        match kind {
            "uniform" => {
                cfg.check_keys("scale", &["kind", "a", "b", "h"])?;
                Ok(ScaleSpec::Uniform {
                    a: cfg.require_number("scale", "a")?,
                    b: cfg.require_number("scale", "b")?,
                    h: cfg.require_number("scale", "h")?,
                })
            }
            "geometric" => {
                cfg.check_keys("scale", &["kind", "q", "kmin", "kmax"])?;
                Ok(ScaleSpec::Geometric { q: cfg.require_number("scale", "q")?, kmin: int("kmin")?, kmax: int("kmax")? })
            }
            "explicit" => {
                cfg.check_keys("scale", &["kind", "points"])?;
                Ok(ScaleSpec::Explicit(cfg.list("scale", "points")?))
            }
            other => Err(CliError::Config(format!("unknown scale kind '{other}'"))),
        }
    }
}

impl FromStr for ScaleSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.trim();
        let (kind, rest) = s.split_once('(').ok_or_else(|| format!("expected kind(args), got '{s}'"))?;
        let args = parse_list(rest.strip_suffix(')').ok_or_else(|| format!("missing ')' in '{s}'"))?)?;
        let int = |x: f64| if x.fract() == 0.0 { Ok(x as i32) } else { Err(format!("{x} is not an integer")) };
        match (kind.trim(), args.as_slice()) {
            ("uniform", [a, b, h]) => Ok(ScaleSpec::Uniform { a: *a, b: *b, h: *h }),
            ("geometric", [q, lo, hi]) => Ok(ScaleSpec::Geometric { q: *q, kmin: int(*lo)?, kmax: int(*hi)? }),
            ("explicit", p) if !p.is_empty() => Ok(ScaleSpec::Explicit(p.to_vec())),
            (k, a) => Err(format!("cannot build '{k}' from {} arguments", a.len())),
        }
    }
}

/// Multi-start settings from `[solver]` and flags.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverSpec {
    pub starts: usize,
    pub seed: u64,
    pub tol: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Default for SolverSpec {
    fn default() -> Self {
        SolverSpec { starts: 64, seed: 0, tol: 1e-9, lo: -2.0, hi: 3.0 }
    }
}

impl SolverSpec {
    fn from_section(cfg: &Config) -> Result<Self> {
        cfg.check_keys("solver", &["starts", "seed", "tol", "lo", "hi"])?;
        let d = SolverSpec::default();
        let s = SolverSpec {
            starts: cfg.count("solver", "starts")?.map(|x| x as usize).unwrap_or(d.starts),
            seed: cfg.count("solver", "seed")?.unwrap_or(d.seed),
            tol: cfg.number("solver", "tol")?.unwrap_or(d.tol),
            lo: cfg.number("solver", "lo")?.unwrap_or(d.lo),
            hi: cfg.number("solver", "hi")?.unwrap_or(d.hi),
        };
        if s.starts == 0 || !(s.tol > 0.0) || !(s.lo < s.hi) {
            return Err(CliError::Config("[solver] needs starts > 0, tol > 0 and lo < hi".into()));
        }
        Ok(s)
    }

    pub fn multi_start(&self) -> tsvar_solver::MultiStartConfig {
        tsvar_solver::MultiStartConfig {
            starts: self.starts,
            seed: self.seed,
            lo: self.lo,
            hi: self.hi,
            newton: tsvar_solver::NewtonConfig { tol: self.tol, ..Default::default() },
            ..Default::default()
        }
    }
}

/// The problem kind of a config file.
#[derive(Debug, Clone, PartialEq)]
pub enum ProblemSpec {
    Fractional { lagrangian: String, alpha: f64, beta: f64, a_value: Option<f64>, b_value: Option<f64> },
    Classical { lagrangian: String, a_value: f64, b_value: f64 },
    Isoperimetric { lagrangian: String, constraint: String, level: f64, a_value: f64, b_value: f64 },
    Higher { catalog: String, left: Vec<f64>, right: Vec<f64> },
}

impl ProblemSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            ProblemSpec::Fractional { .. } => "fractional",
            ProblemSpec::Classical { .. } => "classical",
            ProblemSpec::Isoperimetric { .. } => "isoperimetric",
            ProblemSpec::Higher { .. } => "higher",
        }
    }
}

fn check_expr(cfg: &Config, key: &str) -> Result<String> {
    let text = cfg.require("problem", key)?.to_string();
    tsvar_dsl::parse(&text).map_err(|e| CliError::Config(format!("[problem] {key}: {e}")))?;
    Ok(text)
}

/// A parsed problem file.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemConfig {
    pub scale: ScaleSpec,
    pub problem: ProblemSpec,
    pub solver: SolverSpec,
}

impl ProblemConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg = Config::parse(text)?;
        cfg.check_sections(&["scale", "problem", "solver"])?;
        let scale = ScaleSpec::from_section(&cfg)?;
        let solver = SolverSpec::from_section(&cfg)?;
        let problem = match cfg.require("problem", "kind")? {
            "fractional" => {
                cfg.check_keys("problem", &["kind", "lagrangian", "alpha", "beta", "a_value", "b_value"])?;
                ProblemSpec::Fractional {
                    lagrangian: check_expr(&cfg, "lagrangian")?,
                    alpha: cfg.require_number("problem", "alpha")?,
                    beta: cfg.require_number("problem", "beta")?,
                    a_value: cfg.number("problem", "a_value")?,
                    b_value: cfg.number("problem", "b_value")?,
                }
            }
            "classical" => {
                cfg.check_keys("problem", &["kind", "lagrangian", "a_value", "b_value"])?;
                ProblemSpec::Classical {
                    lagrangian: check_expr(&cfg, "lagrangian")?,
                    a_value: cfg.require_number("problem", "a_value")?,
                    b_value: cfg.require_number("problem", "b_value")?,
                }
            }
            "isoperimetric" => {
                cfg.check_keys("problem", &["kind", "lagrangian", "constraint", "level", "a_value", "b_value"])?;
                ProblemSpec::Isoperimetric {
                    lagrangian: check_expr(&cfg, "lagrangian")?,
                    constraint: check_expr(&cfg, "constraint")?,
                    level: cfg.require_number("problem", "level")?,
                    a_value: cfg.require_number("problem", "a_value")?,
                    b_value: cfg.require_number("problem", "b_value")?,
                }
            }
            "higher" => {
                cfg.check_keys("problem", &["kind", "catalog", "left", "right"])?;
                ProblemSpec::Higher {
                    catalog: cfg.require("problem", "catalog")?.to_string(),
                    left: cfg.list("problem", "left")?,
                    right: cfg.list("problem", "right")?,
                }
            }
            other => return Err(CliError::Config(format!("unknown problem kind '{other}'"))),
        };
        Ok(ProblemConfig { scale, problem, solver })
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
