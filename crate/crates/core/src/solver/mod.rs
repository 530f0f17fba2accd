//! Strang-split time integration of the full system (finite α) and the
//! electrostatic limit (α = ∞).
//!
//! Both schemes alternate a half kick with the nonlinear potential `n`, an
//! exact linear drift of `u` paired with the exact wave update of `(n, ∂_t n)`
//! under a frozen source, and a second half kick. The wave source is the
//! average of `|u|²` at both ends of the drift, which keeps the drift
//! substep time-symmetric. Products inside the stepper are pure collocation,
//! so kicks are exact pointwise phases and the discrete mass and energy are
//! invariants of the space-discrete system.

mod diagnostics;
mod step;

use thiserror::Error;

use crate::operators::{project_q, state_equation_residual, Alpha};
use crate::spectral::{Field, Repr, ScalarField, VectorField};

pub use diagnostics::{hamiltonian, mass};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("solution diverged at t = {t}")]
    Diverged { t: f64 },
    #[error("∂_t n has nonzero mean {0}")]
    NonZeroMeanNt(f64),
    #[error("invalid solver parameters: {0}")]
    InvalidParams(String),
    #[error("invalid state: {0}")]
    InvalidState(String),
}

/// `(u, n, ∂_t n)` at time `t`.
#[derive(Clone, Debug)]
pub struct SystemState {
    pub u: VectorField,
    pub n: ScalarField,
    pub nt: ScalarField,
    pub t: f64,
}

impl SystemState {
    /// Checks that all fields share a grid and that `n`, `∂_t n` are real.
    pub fn new(
        u: VectorField,
        n: ScalarField,
        nt: ScalarField,
        t: f64,
    ) -> Result<Self, SolverError> {
        if !u.grid().same_as(n.grid()) || !u.grid().same_as(nt.grid()) {
            return Err(SolverError::InvalidState(
                "fields live on different grids".into(),
            ));
        }
        if !n.is_real() || !nt.is_real() {
            return Err(SolverError::InvalidState("n and ∂_t n must be real".into()));
        }
        Ok(Self { u, n, nt, t })
    }

    pub fn grid(&self) -> &std::sync::Arc<crate::spectral::Grid> {
        self.u.grid()
    }

    /// Same state with every field in physical space.
    pub fn to_physical(&self) -> Self {
        Self {
            u: self.u.to_physical(),
            n: self.n.to_physical(),
            nt: self.nt.to_physical(),
            t: self.t,
        }
    }

    fn monitor(&self) -> f64 {
        fn l2<F: Field>(f: &F) -> f64 {
            let g = f.grid();
            let w = match f.repr() {
                Repr::Physical => g.cell_volume(),
                Repr::Spectral => g.volume(),
            };
            let s: f64 = f.components().iter().flatten().map(|c| c.norm_sqr()).sum();
            (w * s).sqrt()
        }
        l2(&self.u) + l2(&self.n) + l2(&self.nt)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverParams {
    pub alpha: Alpha,
    pub dt: f64,
    pub t_final: f64,
    /// Sample every this many steps; `None` keeps only the endpoints.
    pub save_every: Option<usize>,
}

impl SolverParams {
    pub fn new(
        alpha: Alpha,
        dt: f64,
        t_final: f64,
        save_every: Option<usize>,
    ) -> Result<Self, SolverError> {
        let p = Self {
            alpha,
            dt,
            t_final,
            save_every,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), SolverError> {
        let bad = |m: String| Err(SolverError::InvalidParams(m));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.t_final >= 0.0 && self.t_final.is_finite()) {
            return bad(format!("t_final must be nonnegative, got {}", self.t_final));
        }
        if self.t_final > 0.0 && self.dt > self.t_final * (1.0 + 1e-12) {
            return bad(format!(
                "dt = {} exceeds t_final = {}",
                self.dt, self.t_final
            ));
        }
        match self.save_every {
            Some(0) => bad("save_every must be positive".into()),
            Some(k) if k as f64 * self.dt > 0.1 * (1.0 + 1e-9) => bad(format!(
                "save_every * dt = {} exceeds 0.1",
                k as f64 * self.dt
            )),
            _ => Ok(()),
        }
    }

    /// Step sizes covering `[0, t_final]`: whole steps of `dt`, plus one
    /// shorter closing step if `t_final` is not a multiple of `dt`.
    pub fn step_sizes(&self) -> Vec<f64> {
        let ratio = self.t_final / self.dt;
        let whole = (ratio + 1e-9).floor() as usize;
        let mut steps = vec![self.dt; whole];
        let rest = self.t_final - whole as f64 * self.dt;
        if rest > 1e-9 * self.dt {
            steps.push(rest);
        }
        steps
    }
}

/// Per-sample diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Diagnostics {
    pub mass: f64,
    /// `None` when the energy is undefined (nonzero-mean `∂_t n`).
    pub hamiltonian: Option<f64>,
    /// State-equation residual with `v` from a centered difference of
    /// neighbouring steps; `None` at the endpoints.
    pub residual: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct Sample {
    pub state: SystemState,
    pub diagnostics: Diagnostics,
}

#[derive(Clone, Debug)]
pub struct Trajectory {
    pub params: SolverParams,
    pub samples: Vec<Sample>,
}

impl Trajectory {
    pub fn times(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.state.t).collect()
    }

    pub fn last(&self) -> &SystemState {
        &self
            .samples
            .last()
            .expect("trajectory is never empty")
            .state
    }
}

/// One step of the full system.
pub fn step_zg(s: &SystemState, p: &SolverParams) -> Result<SystemState, SolverError> {
    match p.alpha {
        Alpha::Finite(a) => step::zg(s, a, p.dt),
        Alpha::Infinite => Err(SolverError::InvalidParams(
            "step_zg needs finite alpha".into(),
        )),
    }
}

/// One step of the limit system. `u` is assumed irrotational.
pub fn step_zl(s: &SystemState, p: &SolverParams) -> Result<SystemState, SolverError> {
    match p.alpha {
        Alpha::Infinite => step::zl(s, p.dt),
        Alpha::Finite(_) => Err(SolverError::InvalidParams(
            "step_zl needs alpha = inf".into(),
        )),
    }
}

fn advance(s: &SystemState, alpha: Alpha, dt: f64) -> Result<SystemState, SolverError> {
    match alpha {
        Alpha::Finite(a) => step::zg(s, a, dt),
        Alpha::Infinite => step::zl(s, dt),
    }
}

/// Limit-system runs start from `Q u₀`.
fn prepare(initial: &SystemState, alpha: Alpha) -> SystemState {
    let mut s = initial.clone();
    if alpha.is_infinite() {
        s.u = project_q(&s.u).into_physical();
    }
    s
}

const BLOWUP_FACTOR: f64 = 1e6;

/// Drive the scheme, calling `on_step(k, state)` after every step
/// (`k = 0` is the initial state). Returns the final state.
fn drive(
    initial: &SystemState,
    p: &SolverParams,
    mut on_step: impl FnMut(usize, &SystemState),
) -> Result<SystemState, SolverError> {
    p.validate()?;
    let mut s = prepare(initial, p.alpha);
    let m0 = s.monitor();
    on_step(0, &s);
    for (k, dt) in p.step_sizes().into_iter().enumerate() {
        s = advance(&s, p.alpha, dt)?;
        if m0 > 0.0 && s.monitor() > BLOWUP_FACTOR * m0 {
            return Err(SolverError::Diverged { t: s.t });
        }
        on_step(k + 1, &s);
    }
    Ok(s)
}

fn is_saved(k: usize, last: usize, save_every: Option<usize>) -> bool {
    k == 0 || k == last || save_every.is_some_and(|e| k.is_multiple_of(e))
}

/// Integrate and call `observe` at every sample time without storing the
/// trajectory. Returns the final state.
pub fn run_observed(
    initial: &SystemState,
    p: &SolverParams,
    mut observe: impl FnMut(&SystemState),
) -> Result<SystemState, SolverError> {
    let last = p.step_sizes().len();
    drive(initial, p, |k, s| {
        if is_saved(k, last, p.save_every) {
            observe(s);
        }
    })
}

/// Integrate and record samples every `save_every` steps, always including
/// `t = 0` and `t_final`.
pub fn run(initial: &SystemState, p: &SolverParams) -> Result<Trajectory, SolverError> {
    let steps = p.step_sizes();
    let last = steps.len();
    let alpha = p.alpha;
    let mut samples: Vec<Sample> = Vec::new();
    let mut prev_u: Option<VectorField> = None;
    let mut pending: Option<(usize, VectorField)> = None;
    drive(initial, p, |k, s| {
        if let Some((idx, before)) = pending.take() {
            let uniform = k >= 2 && steps[k - 1] == steps[k - 2];
            if uniform {
                let dt = steps[k - 1];
                let v = (&s.u.to_spectral() - &before.to_spectral())
                    .scaled(num_complex::Complex64::new(0.5 / dt, 0.0));
                let cur = &samples[idx].state;
                samples[idx].diagnostics.residual =
                    Some(state_equation_residual(&cur.u, &v, &cur.n, alpha));
            }
        }
        if is_saved(k, last, p.save_every) {
            let diagnostics = Diagnostics {
                mass: mass(s),
                hamiltonian: hamiltonian(s, alpha).ok(),
                residual: None,
            };
            if k > 0 && k < last {
                if let Some(u) = prev_u.take() {
                    pending = Some((samples.len(), u));
                }
            }
            samples.push(Sample {
                state: s.clone(),
                diagnostics,
            });
        }
        prev_u = Some(s.u.clone());
    })?;
    Ok(Trajectory {
        params: *p,
        samples,
    })
}
