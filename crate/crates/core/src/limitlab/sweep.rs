//! α sweeps of the full system against the limit solution.

use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use super::data::{gen_data, gen_ill_prepared, gen_well_prepared};
use super::errors::{ErrorAccumulator, ErrorNorms};
use super::{DataKind, DataRecipe, LabError};
use crate::operators::{apply_schrodinger, compute_v, project_p, Alpha, AlphaParam};
use crate::solver::{run_observed, SolverError, SolverParams, SystemState};
use crate::spectral::{lebesgue_norm, sobolev_norm, strichartz_norm, Field, Grid, VectorField};

/// Errors of one full-system run against the limit reference.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRecord {
    pub alpha: f64,
    pub errors: ErrorNorms,
    /// Wall-clock seconds for the run and its error evaluation.
    pub runtime_s: f64,
    /// Time at which the run diverged; such records hold NaN errors and are
    /// excluded from fits.
    pub diverged_at: Option<f64>,
}

impl SweepRecord {
    pub fn err_total(&self) -> f64 {
        self.errors.total()
    }
}

/// Samples of the limit solution with its `v`.
pub struct Reference {
    pub samples: Vec<(SystemState, VectorField)>,
}

impl Reference {
    /// Run the limit system from `initial` and keep every sample.
    pub fn compute(initial: &SystemState, p: &SolverParams) -> Result<Self, LabError> {
        let p = SolverParams {
            alpha: Alpha::Infinite,
            ..*p
        };
        let mut samples = Vec::new();
        run_observed(initial, &p, |s| {
            let v = compute_v(&s.u, &s.n, Alpha::Infinite);
            samples.push((s.clone(), v));
        })?;
        Ok(Self { samples })
    }
}

pub(crate) fn check_alphas(alphas: &[f64]) -> Result<Vec<AlphaParam>, LabError> {
    if alphas.is_empty() {
        return Err(LabError::InvalidAlphas("no alpha values".into()));
    }
    if alphas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(LabError::InvalidAlphas(
            "alpha values must be increasing".into(),
        ));
    }
    alphas
        .iter()
        .map(|&a| AlphaParam::new(a).map_err(|e| LabError::InvalidAlphas(e.to_string())))
        .collect()
}

fn diverged(alpha: f64, t: f64, start: Instant) -> SweepRecord {
    let nan = f64::NAN;
    SweepRecord {
        alpha,
        errors: ErrorNorms {
            u_linf_h2: nan,
            u_l2_w26: nan,
            n_w1: nan,
            v_l2_l6: nan,
        },
        runtime_s: start.elapsed().as_secs_f64(),
        diverged_at: Some(t),
    }
}

/// Errors of one full-system run started from `initial` against `reference`.
pub fn sweep_one(
    initial: &SystemState,
    alpha: AlphaParam,
    p: &SolverParams,
    reference: &Reference,
) -> Result<SweepRecord, LabError> {
    sweep_one_with_state(initial, alpha, p, reference).map(|(r, _)| r)
}

fn sweep_one_with_state(
    initial: &SystemState,
    alpha: AlphaParam,
    p: &SolverParams,
    reference: &Reference,
) -> Result<(SweepRecord, Option<SystemState>), LabError> {
    let start = Instant::now();
    let p = SolverParams {
        alpha: Alpha::Finite(alpha),
        ..*p
    };
    let mut acc = ErrorAccumulator::new();
    let mut k = 0;
    let mut failure = None;
    let out = run_observed(initial, &p, |s| {
        if failure.is_some() {
            return;
        }
        let Some((r, rv)) = reference.samples.get(k) else {
            failure = Some(LabError::SampleMismatch(
                "reference has fewer samples".into(),
            ));
            return;
        };
        let v = compute_v(&s.u, &s.n, Alpha::Finite(alpha));
        if let Err(e) = acc.push_raw(s, &v, r, rv) {
            failure = Some(e);
        }
        k += 1;
    });
    if let Some(e) = failure {
        return Err(e);
    }
    let last = match out {
        Ok(s) => s,
        Err(SolverError::Diverged { t }) => return Ok((diverged(alpha.get(), t, start), None)),
        Err(e) => return Err(e.into()),
    };
    if k != reference.samples.len() {
        return Err(LabError::SampleMismatch(
            "reference has more samples".into(),
        ));
    }
    let rec = SweepRecord {
        alpha: alpha.get(),
        errors: acc.finish()?,
        runtime_s: start.elapsed().as_secs_f64(),
        diverged_at: None,
    };
    Ok((rec, Some(last)))
}

/// Everything a sweep produces.
#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub records: Vec<SweepRecord>,
    /// Final full-system state per α (`None` if the run diverged).
    pub finals: Vec<Option<SystemState>>,
    pub reference_final: SystemState,
}

/// Run the limit system once, then the full system for each `α` from data
/// generated by `recipe`, and return per-α errors in input order.
pub fn alpha_sweep(
    recipe: &DataRecipe,
    grid: &Arc<Grid>,
    p: &SolverParams,
    alphas: &[f64],
) -> Result<Vec<SweepRecord>, LabError> {
    alpha_sweep_outcome(recipe, grid, p, alphas).map(|o| o.records)
}

/// [`alpha_sweep`] that also returns the final states.
pub fn alpha_sweep_outcome(
    recipe: &DataRecipe,
    grid: &Arc<Grid>,
    p: &SolverParams,
    alphas: &[f64],
) -> Result<SweepOutcome, LabError> {
    let alphas = check_alphas(alphas)?;
    let limit = gen_data(recipe, grid, Alpha::Infinite)?;
    let reference = Reference::compute(&limit, p)?;
    let runs: Vec<(SweepRecord, Option<SystemState>)> = alphas
        .par_iter()
        .map(|&a| {
            let init = match recipe.kind {
                DataKind::WellPrepared => gen_well_prepared(recipe, grid, Alpha::Finite(a))?,
                DataKind::IllPrepared => gen_ill_prepared(recipe, grid)?,
            };
            sweep_one_with_state(&init, a, p, &reference)
        })
        .collect::<Result<_, LabError>>()?;
    let reference_final = reference
        .samples
        .last()
        .expect("at least one sample")
        .0
        .clone();
    let (records, finals) = runs.into_iter().unzip();
    Ok(SweepOutcome {
        records,
        finals,
        reference_final,
    })
}

/// The same sweep point at step `dt` and `dt/4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CrossCheck {
    pub alpha: f64,
    pub coarse: f64,
    pub fine: f64,
}

impl CrossCheck {
    /// `|coarse − fine| / fine`.
    pub fn relative_change(&self) -> f64 {
        (self.coarse - self.fine).abs() / self.fine.abs().max(f64::MIN_POSITIVE)
    }
}

/// Repeat one sweep point with a quarter step (and four times the save
/// interval, so sample times match) to expose cancellation between the two
/// discretisation errors.
pub fn cross_check(
    recipe: &DataRecipe,
    grid: &Arc<Grid>,
    p: &SolverParams,
    alpha: f64,
) -> Result<CrossCheck, LabError> {
    let coarse = alpha_point(recipe, grid, p, alpha)?;
    let fine_p = SolverParams {
        dt: p.dt / 4.0,
        save_every: p.save_every.map(|k| 4 * k),
        ..*p
    };
    let fine = alpha_point(recipe, grid, &fine_p, alpha)?;
    Ok(CrossCheck {
        alpha,
        coarse: coarse.err_total(),
        fine: fine.err_total(),
    })
}

fn alpha_point(
    recipe: &DataRecipe,
    grid: &Arc<Grid>,
    p: &SolverParams,
    alpha: f64,
) -> Result<SweepRecord, LabError> {
    let rec = alpha_sweep(recipe, grid, p, &[alpha])?.remove(0);
    if let Some(t) = rec.diverged_at {
        return Err(SolverError::Diverged { t }.into());
    }
    Ok(rec)
}

/// Initial-layer measurements for one `α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LayerRecord {
    pub alpha: f64,
    /// `max_t ‖u^α − u^∞‖_{L²}`
    pub unshifted_linf_l2: f64,
    /// `‖u^α − U(αt)Pu₀ − u^∞‖_{L²_t L⁶_x}`
    pub shifted_l2_l6: f64,
    /// `‖Pu₀‖_{L²}`
    pub layer_l2: f64,
    pub diverged_at: Option<f64>,
}

/// Ill-prepared runs against the limit solution from `Qu₀`, with and without
/// removing the fast layer `U(αt)Pu₀`.
pub fn initial_layer_demo(
    recipe: &DataRecipe,
    grid: &Arc<Grid>,
    p: &SolverParams,
    alphas: &[f64],
) -> Result<Vec<LayerRecord>, LabError> {
    if recipe.kind != DataKind::IllPrepared {
        return Err(LabError::InvalidRecipe(
            "initial_layer_demo needs kind = ill_prepared".into(),
        ));
    }
    let alphas = check_alphas(alphas)?;
    let init = gen_ill_prepared(recipe, grid)?;
    let limit = gen_data(recipe, grid, Alpha::Infinite)?;
    let p_inf = SolverParams {
        alpha: Alpha::Infinite,
        ..*p
    };
    let mut reference = Vec::new();
    run_observed(&limit, &p_inf, |s| reference.push(s.u.to_spectral()))?;
    let layer0 = project_p(&init.u);
    let layer_l2 = sobolev_norm(&layer0, 0.0);

    alphas
        .par_iter()
        .map(|&a| {
            let pa = SolverParams {
                alpha: Alpha::Finite(a),
                ..*p
            };
            let mut k = 0;
            let mut linf: f64 = 0.0;
            let mut l6 = Vec::new();
            let out = run_observed(&init, &pa, |s| {
                let diff = &s.u - &reference[k];
                linf = linf.max(sobolev_norm(&diff, 0.0));
                let shifted = &diff - &apply_schrodinger(&layer0, a.get() * s.t);
                l6.push((s.t, lebesgue_norm(&shifted, 6.0)));
                k += 1;
            });
            match out {
                Ok(_) => Ok(LayerRecord {
                    alpha: a.get(),
                    unshifted_linf_l2: linf,
                    shifted_l2_l6: if l6.len() < 2 {
                        0.0
                    } else {
                        strichartz_norm(&l6, 2.0)?
                    },
                    layer_l2,
                    diverged_at: None,
                }),
                Err(SolverError::Diverged { t }) => Ok(LayerRecord {
                    alpha: a.get(),
                    unshifted_linf_l2: f64::NAN,
                    shifted_l2_l6: f64::NAN,
                    layer_l2,
                    diverged_at: Some(t),
                }),
                Err(e) => Err(e.into()),
            }
        })
        .collect()
}
