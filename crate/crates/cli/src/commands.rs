//! Subcommand drivers. Each returns the process exit code.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde_json::json;
use zakharov::limitlab::{
    alpha_sweep_outcome, fit_rate, gen_data, gen_ill_prepared, initial_layer_demo,
    strichartz_decay, DataKind, LayerRecord, StrichartzPair,
};
use zakharov::solver::{hamiltonian, mass, run_observed, SolverError, SolverParams, SystemState};
use zakharov::{Alpha, Grid};

use crate::config::{parse_config, OutputFormat, RunConfig};
use crate::output::{
    write_diagnostics_csv, write_layer_csv, write_metadata, write_rate, write_strichartz_csv,
    write_sweep_csv, DiagnosticsRow,
};
use crate::snapshot::FieldSnapshot;

/// Exit code for a run that diverged after partial results were written.
pub const EXIT_DIVERGED: i32 = 3;

/// Command-line overrides applied on top of the config file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub output: Option<PathBuf>,
    pub seed: Option<u64>,
    pub alphas: Option<Vec<f64>>,
}

/// Parse `path` (defaults when `None`) and apply `ov`.
pub fn load_config(path: Option<&Path>, ov: &Overrides) -> Result<RunConfig> {
    let mut cfg = match path {
        Some(p) => {
            let text = fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
            parse_config(&text).with_context(|| format!("in {}", p.display()))?
        }
        None => RunConfig::default(),
    };
    if let Some(d) = &ov.output {
        cfg.output.dir = d.clone();
    }
    if let Some(s) = ov.seed {
        cfg.data.seed = s;
    }
    if let Some(a) = &ov.alphas {
        cfg.alphas = a.clone();
    }
    Ok(cfg)
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    grid: std::sync::Arc<Grid>,
    quiet: bool,
    start: Instant,
}

impl<'a> Ctx<'a> {
    fn new(cfg: &'a RunConfig, quiet: bool) -> Result<Self> {
        let grid = Grid::new(cfg.grid.n, cfg.grid.length)?;
        fs::create_dir_all(&cfg.output.dir)
            .with_context(|| format!("creating {}", cfg.output.dir.display()))?;
        Ok(Self {
            cfg,
            grid,
            quiet,
            start: Instant::now(),
        })
    }

    fn params(&self, alpha: Alpha) -> Result<SolverParams> {
        let s = &self.cfg.solver;
        Ok(SolverParams::new(alpha, s.dt, s.t_final, s.save_every)?)
    }

    fn path(&self, name: &str) -> PathBuf {
        self.cfg.output.dir.join(name)
    }

    fn wants(&self, f: OutputFormat) -> bool {
        self.cfg.output.wants(f)
    }

    fn say(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn metadata(&self, command: &str, extra: serde_json::Value) -> Result<()> {
        if self.wants(OutputFormat::Json) {
            let wall = self.start.elapsed().as_secs_f64();
            write_metadata(&self.path("metadata.json"), command, self.cfg, wall, extra)?;
        }
        Ok(())
    }

    fn snapshot_dir(&self) -> Result<PathBuf> {
        let d = self.path("snapshots");
        fs::create_dir_all(&d).with_context(|| format!("creating {}", d.display()))?;
        Ok(d)
    }
}

fn write_state(dir: &Path, stem: &str, s: &SystemState, alpha: Alpha) -> Result<()> {
    let s = s.to_physical();
    let files = [
        (
            format!("{stem}_u.zkf"),
            FieldSnapshot::from_vector(&s.u, s.t, alpha),
        ),
        (
            format!("{stem}_n.zkf"),
            FieldSnapshot::from_scalar(&s.n, s.t, alpha),
        ),
        (
            format!("{stem}_nt.zkf"),
            FieldSnapshot::from_scalar(&s.nt, s.t, alpha),
        ),
    ];
    for (name, snap) in files {
        let p = dir.join(&name);
        snap.write(&p)
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

/// One run of the system selected by `solver.alpha`, with per-sample
/// diagnostics and optional snapshots.
pub fn cmd_simulate(cfg: &RunConfig, quiet: bool) -> Result<i32> {
    let ctx = Ctx::new(cfg, quiet)?;
    let alpha = cfg.solver.alpha;
    let p = ctx.params(alpha)?;
    let init = gen_data(&cfg.data, &ctx.grid, alpha)?;
    let snap_dir = if ctx.wants(OutputFormat::Snapshot) {
        Some(ctx.snapshot_dir()?)
    } else {
        None
    };
    let mut rows = Vec::new();
    let mut io_err = None;
    let result = run_observed(&init, &p, |s| {
        rows.push(DiagnosticsRow {
            t: s.t,
            mass: mass(s),
            hamiltonian: hamiltonian(s, alpha).ok(),
        });
        if let (Some(dir), None) = (&snap_dir, &io_err) {
            if let Err(e) = write_state(dir, &format!("t{:05}", rows.len() - 1), s, alpha) {
                io_err = Some(e);
            }
        }
    });
    if ctx.wants(OutputFormat::Csv) {
        write_diagnostics_csv(&ctx.path("diagnostics.csv"), &rows)?;
    }
    if let Some(e) = io_err {
        return Err(e);
    }
    let diverged_at = match result {
        Ok(_) => None,
        Err(SolverError::Diverged { t }) => Some(t),
        Err(e) => return Err(e.into()),
    };
    ctx.metadata(
        "simulate",
        json!({ "samples": rows.len(), "diverged_at": diverged_at }),
    )?;
    if let Some(t) = diverged_at {
        eprintln!("run diverged at t = {t}");
        return Ok(EXIT_DIVERGED);
    }
    if let (Some(first), Some(last)) = (rows.first(), rows.last()) {
        ctx.say(format!(
            "{} samples, relative mass drift {:.3e}",
            rows.len(),
            (last.mass - first.mass).abs() / first.mass.max(f64::MIN_POSITIVE)
        ));
    }
    Ok(0)
}

/// Full system at each `sweep.alphas` against the limit reference.
pub fn cmd_sweep(cfg: &RunConfig, quiet: bool) -> Result<i32> {
    let ctx = Ctx::new(cfg, quiet)?;
    let p = ctx.params(Alpha::Infinite)?;
    let out = alpha_sweep_outcome(&cfg.data, &ctx.grid, &p, &cfg.alphas)?;
    write_sweep_csv(&ctx.path("results.csv"), &out.records)?;
    let fit = fit_rate(&out.records).map_err(|e| e.to_string());
    write_rate(&ctx.path("rate.txt"), fit.as_ref().map_err(Clone::clone))?;
    if ctx.wants(OutputFormat::Snapshot) {
        let dir = ctx.snapshot_dir()?;
        write_state(&dir, "limit_final", &out.reference_final, Alpha::Infinite)?;
        for (rec, fin) in out.records.iter().zip(&out.finals) {
            if let Some(s) = fin {
                write_state(
                    &dir,
                    &format!("alpha_{}_final", rec.alpha),
                    s,
                    Alpha::finite(rec.alpha)?,
                )?;
            }
        }
    }
    let diverged: Vec<f64> = out
        .records
        .iter()
        .filter(|r| r.diverged_at.is_some())
        .map(|r| r.alpha)
        .collect();
    ctx.metadata(
        "sweep",
        json!({
            "diverged_alphas": diverged,
            "runtime_s": out.records.iter().map(|r| (r.alpha, r.runtime_s)).collect::<Vec<_>>(),
        }),
    )?;
    for r in &out.records {
        match r.diverged_at {
            Some(t) => ctx.say(format!("alpha {:>6}: diverged at t = {t}", r.alpha)),
            None => ctx.say(format!(
                "alpha {:>6}: err_total {:.4e}",
                r.alpha,
                r.err_total()
            )),
        }
    }
    match &fit {
        Ok(f) => ctx.say(format!("slope {:.3} (r^2 {:.3})", f.slope, f.r_squared)),
        Err(e) => ctx.say(format!("no rate fit: {e}")),
    }
    Ok(if diverged.is_empty() {
        0
    } else {
        EXIT_DIVERGED
    })
}

/// Decay of `‖U(αt)P u₀‖_{L^q L^r}` in α for the ill-prepared datum.
pub fn cmd_strichartz(cfg: &RunConfig, quiet: bool) -> Result<i32> {
    let ctx = Ctx::new(cfg, quiet)?;
    let pair = StrichartzPair::new(cfg.strichartz.0, cfg.strichartz.1)?;
    let recipe = zakharov::DataRecipe {
        kind: DataKind::IllPrepared,
        ..cfg.data
    };
    let f = gen_ill_prepared(&recipe, &ctx.grid)?.u;
    let rep = strichartz_decay(&f, &cfg.alphas, pair, cfg.solver.t_final)?;
    write_strichartz_csv(&ctx.path("strichartz.csv"), &rep.records)?;
    let fit = rep
        .fit
        .as_ref()
        .ok_or_else(|| "fewer than three positive norms".to_string());
    write_rate(&ctx.path("rate.txt"), fit.clone())?;
    ctx.metadata(
        "strichartz",
        json!({ "q": pair.q(), "r": pair.r(), "horizon": rep.horizon, "wrap_time": rep.wrap_time }),
    )?;
    if rep.horizon > rep.wrap_time {
        ctx.say(format!(
            "note: horizon {} exceeds the torus wrap time {:.4}",
            rep.horizon, rep.wrap_time
        ));
    }
    for r in &rep.records {
        ctx.say(format!("alpha {:>6}: norm {:.6e}", r.alpha, r.norm));
    }
    if let Ok(f) = fit {
        ctx.say(format!("slope {:.3}", f.slope));
    }
    Ok(0)
}

/// Ill-prepared runs with and without the fast-layer shift.
pub fn cmd_layer(cfg: &RunConfig, quiet: bool) -> Result<i32> {
    let ctx = Ctx::new(cfg, quiet)?;
    let p = ctx.params(Alpha::Infinite)?;
    let recipe = zakharov::DataRecipe {
        kind: DataKind::IllPrepared,
        ..cfg.data
    };
    let recs: Vec<LayerRecord> = initial_layer_demo(&recipe, &ctx.grid, &p, &cfg.alphas)?;
    write_layer_csv(&ctx.path("layer.csv"), &recs)?;
    let diverged: Vec<f64> = recs
        .iter()
        .filter(|r| r.diverged_at.is_some())
        .map(|r| r.alpha)
        .collect();
    ctx.metadata("layer", json!({ "diverged_alphas": diverged }))?;
    for r in &recs {
        ctx.say(format!(
            "alpha {:>6}: unshifted {:.4e}  shifted {:.4e}  |Pu0| {:.4e}",
            r.alpha, r.unshifted_linf_l2, r.shifted_l2_l6, r.layer_l2
        ));
    }
    Ok(if diverged.is_empty() {
        0
    } else {
        EXIT_DIVERGED
    })
}

/// Log-log SVG of a sweep CSV; writes next to the input unless `out` is given.
pub fn cmd_plot(csv_path: &Path, out: Option<&Path>) -> Result<PathBuf> {
    let pts = crate::plot::read_points(csv_path)?;
    let svg = crate::plot::render_svg(&pts)?;
    let target = out
        .map(Path::to_path_buf)
        .unwrap_or_else(|| csv_path.with_extension("svg"));
    fs::write(&target, svg).with_context(|| format!("writing {}", target.display()))?;
    Ok(target)
}
