//! `key = value` run configuration.
//!
//! ```text
//! # comment
//! grid.n = 32
//! solver.save_every = inf
//! sweep.alphas = 1, 2, 4, 8
//! ```

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::PathBuf;

use thiserror::Error;
use zakharov::{Alpha, DataKind, DataRecipe};

#[derive(Debug, Error, Clone, PartialEq)]
pub struct ConfigError {
    /// 1-based line of the offending entry; `None` for cross-key checks on defaults.
    pub line: Option<usize>,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}: {}", self.key, self.message),
            None => write!(f, "{}: {}", self.key, self.message),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
    Snapshot,
}

impl OutputFormat {
    fn parse(s: &str) -> Option<Self> {
        match s {
            "csv" => Some(Self::Csv),
            "json" => Some(Self::Json),
            "snapshot" => Some(Self::Snapshot),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GridConfig {
    pub n: usize,
    pub length: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    pub dt: f64,
    pub t_final: f64,
    /// `None` keeps only the endpoints (`inf` in the file).
    pub save_every: Option<usize>,
    /// System for `simulate`; `inf` selects the limit system.
    pub alpha: Alpha,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub formats: Vec<OutputFormat>,
}

impl OutputConfig {
    pub fn wants(&self, f: OutputFormat) -> bool {
        self.formats.contains(&f)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub grid: GridConfig,
    pub solver: SolverConfig,
    pub data: DataRecipe,
    pub alphas: Vec<f64>,
    /// Strichartz pair `(q, r)`; `q = inf` allowed.
    pub strichartz: (f64, f64),
    pub output: OutputConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            grid: GridConfig {
                n: 32,
                length: 2.0 * PI,
            },
            solver: SolverConfig {
                dt: 1e-3,
                t_final: 0.5,
                save_every: Some(5),
                alpha: Alpha::Infinite,
            },
            data: DataRecipe::default(),
            alphas: vec![1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0],
            strichartz: (2.0, 6.0),
            output: OutputConfig {
                dir: PathBuf::from("out"),
                formats: vec![OutputFormat::Csv, OutputFormat::Json],
            },
        }
    }
}

pub const KEYS: &[&str] = &[
    "grid.n",
    "grid.length",
    "solver.dt",
    "solver.t_final",
    "solver.save_every",
    "solver.alpha",
    "data.seed",
    "data.kind",
    "data.n_modes",
    "data.eps_solenoidal",
    "data.alpha_coupling",
    "data.amplitude",
    "sweep.alphas",
    "strichartz.q",
    "strichartz.r",
    "output.dir",
    "output.formats",
];

struct Entry<'a> {
    line: usize,
    key: &'a str,
    value: &'a str,
}

impl Entry<'_> {
    fn err(&self, message: impl Into<String>) -> ConfigError {
        ConfigError {
            line: Some(self.line),
            key: self.key.to_string(),
            message: message.into(),
        }
    }

    fn float(&self) -> Result<f64, ConfigError> {
        parse_float(self.value)
            .ok_or_else(|| self.err(format!("expected a number, got {:?}", self.value)))
    }

    fn float_or_inf(&self) -> Result<f64, ConfigError> {
        if self.value == "inf" {
            return Ok(f64::INFINITY);
        }
        self.float()
    }

    fn positive(&self) -> Result<f64, ConfigError> {
        let v = self.float()?;
        if v > 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(self.err(format!("must be positive, got {v}")))
        }
    }

    fn nonneg(&self) -> Result<f64, ConfigError> {
        let v = self.float()?;
        if v >= 0.0 && v.is_finite() {
            Ok(v)
        } else {
            Err(self.err(format!("must be >= 0, got {v}")))
        }
    }

    fn integer(&self) -> Result<u64, ConfigError> {
        self.value.parse::<u64>().map_err(|_| {
            self.err(format!(
                "expected a nonnegative integer, got {:?}",
                self.value
            ))
        })
    }

    fn alpha(&self) -> Result<f64, ConfigError> {
        let v = self.float_or_inf()?;
        if v >= 1.0 {
            Ok(v)
        } else {
            Err(self.err(format!("alpha must be >= 1, got {v}")))
        }
    }
}

fn parse_float(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Parse a comma-separated list of α values (as in `--alphas`).
pub fn parse_alphas(s: &str) -> Result<Vec<f64>, String> {
    let vals = s
        .split(',')
        .map(|t| t.trim())
        .filter(|t| !t.is_empty())
        .map(|t| parse_float(t).ok_or_else(|| format!("not a number: {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    if vals.is_empty() {
        return Err("empty alpha list".into());
    }
    if let Some(v) = vals.iter().find(|&&v| v < 1.0) {
        return Err(format!("alpha must be >= 1, got {v}"));
    }
    if vals.windows(2).any(|w| w[1] <= w[0]) {
        return Err("alpha values must be strictly increasing".into());
    }
    Ok(vals)
}

/// Parse configuration text; absent keys keep their defaults.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut cfg = RunConfig::default();
    let mut seen: HashMap<&str, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(ConfigError {
                line: Some(line),
                key: content.to_string(),
                message: "expected `key = value`".into(),
            });
        };
        let e = Entry {
            line,
            key: key.trim(),
            value: value.trim(),
        };
        if !KEYS.contains(&e.key) {
            return Err(e.err("unknown key"));
        }
        if let Some(prev) = seen.insert(e.key, line) {
            return Err(e.err(format!("duplicate key (first set on line {prev})")));
        }
        apply(&mut cfg, &e)?;
    }
    check(&cfg, &seen)?;
    Ok(cfg)
}

fn apply(cfg: &mut RunConfig, e: &Entry) -> Result<(), ConfigError> {
    match e.key {
        "grid.n" => {
            let n = e.integer()? as usize;
            if !(4..=256).contains(&n) || !n.is_power_of_two() {
                return Err(e.err(format!("must be a power of two in 4..=256, got {n}")));
            }
            cfg.grid.n = n;
        }
        "grid.length" => cfg.grid.length = e.positive()?,
        "solver.dt" => cfg.solver.dt = e.positive()?,
        "solver.t_final" => cfg.solver.t_final = e.positive()?,
        "solver.save_every" => {
            cfg.solver.save_every = if e.value == "inf" {
                None
            } else {
                match e.integer()? {
                    0 => return Err(e.err("must be >= 1 or inf")),
                    k => Some(k as usize),
                }
            }
        }
        "solver.alpha" => {
            let a = e.alpha()?;
            cfg.solver.alpha = if a.is_infinite() {
                Alpha::Infinite
            } else {
                Alpha::finite(a).map_err(|x| e.err(x.to_string()))?
            };
        }
        "data.seed" => cfg.data.seed = e.integer()?,
        "data.kind" => {
            cfg.data.kind = e.value.parse::<DataKind>().map_err(|_| {
                e.err(format!(
                    "expected well_prepared or ill_prepared, got {:?}",
                    e.value
                ))
            })?
        }
        "data.n_modes" => {
            let m = e.integer()?;
            if m == 0 {
                return Err(e.err("must be >= 1"));
            }
            cfg.data.n_modes = m as usize;
        }
        "data.eps_solenoidal" => cfg.data.eps_solenoidal = e.nonneg()?,
        "data.alpha_coupling" => {
            cfg.data.alpha_coupling = match e.value {
                "true" => true,
                "false" => false,
                v => return Err(e.err(format!("expected true or false, got {v:?}"))),
            }
        }
        "data.amplitude" => cfg.data.amplitude = e.nonneg()?,
        "sweep.alphas" => cfg.alphas = parse_alphas(e.value).map_err(|m| e.err(m))?,
        "strichartz.q" => {
            let q = e.float_or_inf()?;
            if q < 2.0 {
                return Err(e.err(format!("must be >= 2, got {q}")));
            }
            cfg.strichartz.0 = q;
        }
        "strichartz.r" => {
            let r = e.float()?;
            if !(2.0..=6.0).contains(&r) {
                return Err(e.err(format!("must be in [2, 6], got {r}")));
            }
            cfg.strichartz.1 = r;
        }
        "output.dir" => {
            if e.value.is_empty() {
                return Err(e.err("must not be empty"));
            }
            cfg.output.dir = PathBuf::from(e.value);
        }
        "output.formats" => {
            let mut formats = Vec::new();
            for t in e.value.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let f = OutputFormat::parse(t)
                    .ok_or_else(|| e.err(format!("unknown format {t:?} (csv, json, snapshot)")))?;
                if !formats.contains(&f) {
                    formats.push(f);
                }
            }
            cfg.output.formats = formats;
        }
        _ => unreachable!("key list and match arms agree"),
    }
    Ok(())
}

fn check(cfg: &RunConfig, seen: &HashMap<&str, usize>) -> Result<(), ConfigError> {
    let at = |key: &str, message: String| ConfigError {
        line: seen.get(key).copied(),
        key: key.to_string(),
        message,
    };
    let s = &cfg.solver;
    if s.dt > s.t_final {
        return Err(at(
            "solver.dt",
            format!("dt = {} exceeds t_final = {}", s.dt, s.t_final),
        ));
    }
    if let Some(k) = s.save_every {
        if k as f64 * s.dt > 0.1 * (1.0 + 1e-9) {
            return Err(at(
                "solver.save_every",
                format!("save_every * dt = {} exceeds 0.1", k as f64 * s.dt),
            ));
        }
    }
    if cfg.data.n_modes >= cfg.grid.n / 2 {
        return Err(at(
            "data.n_modes",
            format!(
                "must be below n/2 = {} for grid.n = {}",
                cfg.grid.n / 2,
                cfg.grid.n
            ),
        ));
    }
    Ok(())
}
