//! Space-time decay of the fast group `U(αt)P`.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::rate::{fit_loglog, RateFit};
use super::sweep::check_alphas;
use super::LabError;
use crate::operators::{apply_schrodinger, project_p};
use crate::spectral::{lebesgue_norm, strichartz_norm, Field, VectorField};

/// A Schrödinger-admissible pair: `2/q = 3(1/2 − 1/r)`, `2 ≤ r ≤ 6`.
/// `q = ∞` is written as `f64::INFINITY`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrichartzPair {
    q: f64,
    r: f64,
}

impl StrichartzPair {
    pub fn new(q: f64, r: f64) -> Result<Self, LabError> {
        let inv_q = if q.is_infinite() { 0.0 } else { 1.0 / q };
        let ok =
            (2.0..=6.0).contains(&r) && q >= 2.0 && (inv_q - 1.5 * (0.5 - 1.0 / r)).abs() < 1e-12;
        if ok {
            Ok(Self { q, r })
        } else {
            Err(LabError::NotAdmissible { q, r })
        }
    }

    /// `(∞, 2)`
    pub fn energy() -> Self {
        Self {
            q: f64::INFINITY,
            r: 2.0,
        }
    }

    /// `(2, 6)`
    pub fn endpoint() -> Self {
        Self { q: 2.0, r: 6.0 }
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrichartzRecord {
    pub alpha: f64,
    /// `‖U(αt)Pf‖_{L^q(0,T; L^r)}`
    pub norm: f64,
    pub time_samples: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StrichartzReport {
    pub pair: StrichartzPair,
    pub horizon: f64,
    /// `L²/(4π)`: the time after which `U(s)` on the torus of side `L`
    /// returns to itself (the spectrum `|k|²` is a multiple of `4π²/L²`, so
    /// `U(s)` has period `L²/(2π)`); dispersion is only meaningful before
    /// half of that.
    pub wrap_time: f64,
    pub records: Vec<StrichartzRecord>,
    /// Log-log fit of norm against α, if at least three norms are positive.
    pub fit: Option<RateFit>,
}

/// Largest `|k|²` carrying a coefficient above round-off.
fn max_active_k2(f: &VectorField) -> f64 {
    let g = f.grid();
    let peak = f
        .components()
        .iter()
        .flatten()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    if peak == 0.0 {
        return 0.0;
    }
    (0..g.len())
        .filter(|&idx| f.components().iter().any(|c| c[idx].norm() > 1e-12 * peak))
        .map(|idx| g.k_squared(idx))
        .fold(0.0, f64::max)
}

/// `‖U(αt)Pf‖_{L^q(0,T;L^r)}` for each `α`, with time step
/// `0.1/(α|k_max|²)` so every phase is resolved.
pub fn strichartz_decay(
    f: &VectorField,
    alphas: &[f64],
    pair: StrichartzPair,
    horizon: f64,
) -> Result<StrichartzReport, LabError> {
    let alphas = check_alphas(alphas)?;
    if !(horizon > 0.0 && horizon.is_finite()) {
        return Err(LabError::InvalidHorizon(horizon));
    }
    let pf = project_p(f);
    let k2 = max_active_k2(&pf);
    let records: Vec<StrichartzRecord> = alphas
        .par_iter()
        .map(|&a| {
            let a = a.get();
            let steps = if k2 == 0.0 {
                1
            } else {
                (horizon * a * k2 / 0.1).ceil() as usize
            };
            let samples: Vec<(f64, f64)> = (0..=steps)
                .map(|j| {
                    let t = horizon * j as f64 / steps as f64;
                    (t, lebesgue_norm(&apply_schrodinger(&pf, a * t), pair.r))
                })
                .collect();
            Ok(StrichartzRecord {
                alpha: a,
                norm: strichartz_norm(&samples, pair.q)?,
                time_samples: samples.len(),
            })
        })
        .collect::<Result<_, LabError>>()?;
    let pts: Vec<(f64, f64)> = records.iter().map(|r| (r.alpha, r.norm)).collect();
    let fit = fit_loglog(&pts).ok();
    let length = f.grid().length();
    Ok(StrichartzReport {
        pair,
        horizon,
        wrap_time: length * length / (4.0 * PI),
        records,
        fit,
    })
}
