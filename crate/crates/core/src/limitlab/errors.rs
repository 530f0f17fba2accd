//! Space-time error norms between two sampled solutions.

use super::LabError;
use crate::operators::{compute_v, Alpha};
use crate::solver::{SystemState, Trajectory};
use crate::spectral::{
    lebesgue_norm, sobolev_lebesgue_norm, sobolev_norm, strichartz_norm, VectorField,
};

/// The four components of the error, each a space-time norm of a difference.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ErrorNorms {
    /// `max_t ‖u_a − u_b‖_{H²}`
    pub u_linf_h2: f64,
    /// `‖u_a − u_b‖_{L²_t W^{2,6}_x}`
    pub u_l2_w26: f64,
    /// `max_t ‖n_a − n_b‖_{H¹} + max_t ‖∂_t n_a − ∂_t n_b‖_{L²}`
    pub n_w1: f64,
    /// `‖v_a − v_b‖_{L²_t L⁶_x}`
    pub v_l2_l6: f64,
}

impl ErrorNorms {
    pub fn total(&self) -> f64 {
        self.u_linf_h2 + self.u_l2_w26 + self.n_w1 + self.v_l2_l6
    }
}

/// Streaming accumulator: feed matching samples in time order, then
/// [`finish`](Self::finish).
#[derive(Clone, Debug, Default)]
pub struct ErrorAccumulator {
    u_h2: f64,
    n_h1: f64,
    nt_l2: f64,
    w26: Vec<(f64, f64)>,
    v_l6: Vec<(f64, f64)>,
}

impl ErrorAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Add one sample pair; `v` is formed from each state with its own `α`.
    pub fn push(
        &mut self,
        a: &SystemState,
        alpha_a: Alpha,
        b: &SystemState,
        alpha_b: Alpha,
    ) -> Result<(), LabError> {
        let va = compute_v(&a.u, &a.n, alpha_a);
        self.push_with_v(a, &va, b, alpha_b)
    }

    /// As [`push`](Self::push), with `v_a` already computed.
    pub fn push_with_v(
        &mut self,
        a: &SystemState,
        va: &VectorField,
        b: &SystemState,
        alpha_b: Alpha,
    ) -> Result<(), LabError> {
        let vb = compute_v(&b.u, &b.n, alpha_b);
        self.push_raw(a, va, b, &vb)
    }

    pub fn push_raw(
        &mut self,
        a: &SystemState,
        va: &VectorField,
        b: &SystemState,
        vb: &VectorField,
    ) -> Result<(), LabError> {
        if (a.t - b.t).abs() > 1e-9 * a.t.abs().max(1.0) {
            return Err(LabError::SampleMismatch(format!(
                "times {} and {}",
                a.t, b.t
            )));
        }
        if !a.grid().same_as(b.grid()) {
            return Err(LabError::SampleMismatch("different grids".into()));
        }
        if let Some(&(last, _)) = self.w26.last() {
            if a.t <= last {
                return Err(LabError::SampleMismatch("samples out of order".into()));
            }
        }
        let du = &a.u - &b.u;
        self.u_h2 = self.u_h2.max(sobolev_norm(&du, 2.0));
        self.w26.push((a.t, sobolev_lebesgue_norm(&du, 6.0)));
        self.n_h1 = self.n_h1.max(sobolev_norm(&(&a.n - &b.n), 1.0));
        self.nt_l2 = self.nt_l2.max(sobolev_norm(&(&a.nt - &b.nt), 0.0));
        self.v_l6.push((a.t, lebesgue_norm(&(va - vb), 6.0)));
        Ok(())
    }

    pub fn samples(&self) -> usize {
        self.w26.len()
    }

    /// Temporal norms need at least two samples; a single sample yields
    /// zero for the `L²_t` components.
    pub fn finish(&self) -> Result<ErrorNorms, LabError> {
        let l2t = |s: &[(f64, f64)]| -> Result<f64, LabError> {
            if s.len() < 2 {
                return Ok(0.0);
            }
            Ok(strichartz_norm(s, 2.0)?)
        };
        Ok(ErrorNorms {
            u_linf_h2: self.u_h2,
            u_l2_w26: l2t(&self.w26)?,
            n_w1: self.n_h1 + self.nt_l2,
            v_l2_l6: l2t(&self.v_l6)?,
        })
    }
}

/// Error norms between two trajectories sampled at the same times.
pub fn error_norms(a: &Trajectory, b: &Trajectory) -> Result<ErrorNorms, LabError> {
    if a.samples.len() != b.samples.len() {
        return Err(LabError::SampleMismatch(format!(
            "{} vs {} samples",
            a.samples.len(),
            b.samples.len()
        )));
    }
    let mut acc = ErrorAccumulator::new();
    for (sa, sb) in a.samples.iter().zip(&b.samples) {
        acc.push(&sa.state, a.params.alpha, &sb.state, b.params.alpha)?;
    }
    acc.finish()
}
