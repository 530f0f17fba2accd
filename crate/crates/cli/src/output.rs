//! CSV tables, rate files and run metadata.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::{json, Value};
use zakharov::limitlab::{LayerRecord, RateFit, StrichartzRecord, SweepRecord};

use crate::config::RunConfig;

pub const SWEEP_HEADER: [&str; 6] = [
    "alpha",
    "err_u_LinfH2",
    "err_u_L2W26",
    "err_n_W1",
    "err_v_L2L6",
    "err_total",
];

/// Fixed-width scientific notation so reruns print identical text.
pub fn num(x: f64) -> String {
    format!("{x:.12e}")
}

fn write_table(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("creating {}", path.display()))?;
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

/// `results.csv`: one row per converged α.
pub fn write_sweep_csv(path: &Path, records: &[SweepRecord]) -> Result<()> {
    let rows: Vec<Vec<String>> = records
        .iter()
        .filter(|r| r.diverged_at.is_none())
        .map(|r| {
            let e = r.errors;
            vec![
                format!("{}", r.alpha),
                num(e.u_linf_h2),
                num(e.u_l2_w26),
                num(e.n_w1),
                num(e.v_l2_l6),
                num(r.err_total()),
            ]
        })
        .collect();
    write_table(path, &SWEEP_HEADER, &rows)
}

pub fn write_strichartz_csv(path: &Path, records: &[StrichartzRecord]) -> Result<()> {
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                format!("{}", r.alpha),
                num(r.norm),
                r.time_samples.to_string(),
            ]
        })
        .collect();
    write_table(path, &["alpha", "norm", "time_samples"], &rows)
}

pub fn write_layer_csv(path: &Path, records: &[LayerRecord]) -> Result<()> {
    let rows: Vec<Vec<String>> = records
        .iter()
        .filter(|r| r.diverged_at.is_none())
        .map(|r| {
            vec![
                format!("{}", r.alpha),
                num(r.unshifted_linf_l2),
                num(r.shifted_l2_l6),
                num(r.layer_l2),
            ]
        })
        .collect();
    write_table(
        path,
        &["alpha", "err_u_LinfL2", "err_shifted_L2L6", "layer_L2"],
        &rows,
    )
}

/// Per-sample diagnostics of a single run.
pub struct DiagnosticsRow {
    pub t: f64,
    pub mass: f64,
    pub hamiltonian: Option<f64>,
}

pub fn write_diagnostics_csv(path: &Path, rows: &[DiagnosticsRow]) -> Result<()> {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                num(r.t),
                num(r.mass),
                r.hamiltonian.map(num).unwrap_or_default(),
            ]
        })
        .collect();
    write_table(path, &["t", "mass", "hamiltonian"], &rows)
}

/// `rate.txt`; records why no fit is available when it failed.
pub fn write_rate(path: &Path, fit: Result<&RateFit, String>) -> Result<()> {
    let text = match fit {
        Ok(f) => format!(
            "slope = {:.6}\nintercept = {:.6}\nr_squared = {:.6}\npoints = {}\n",
            f.slope, f.intercept, f.r_squared, f.points
        ),
        Err(reason) => format!("fit unavailable: {reason}\n"),
    };
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn git_describe() -> &'static str {
    env!("ZAK_GIT_DESCRIBE")
}

/// `metadata.json` with the run configuration and `extra` fields merged in.
pub fn write_metadata(
    path: &Path,
    command: &str,
    cfg: &RunConfig,
    wall_time_s: f64,
    extra: Value,
) -> Result<()> {
    let d = &cfg.data;
    let mut meta = json!({
        "command": command,
        "git_describe": git_describe(),
        "seed": d.seed,
        "grid": { "n": cfg.grid.n, "length": cfg.grid.length },
        "solver": {
            "dt": cfg.solver.dt,
            "t_final": cfg.solver.t_final,
            "save_every": cfg.solver.save_every,
            "alpha": cfg.solver.alpha.to_string(),
        },
        "data": {
            "kind": d.kind.as_str(),
            "n_modes": d.n_modes,
            "eps_solenoidal": d.eps_solenoidal,
            "alpha_coupling": d.alpha_coupling,
            "amplitude": d.amplitude,
        },
        "alphas": cfg.alphas,
        "wall_time_s": wall_time_s,
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut meta, extra) {
        m.extend(e);
    }
    let text = serde_json::to_string_pretty(&meta)?;
    fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}
