//! Fourier-multiplier operators of the vectorial Zakharov system.

mod auxiliary;
mod projection;
mod propagators;
mod wave;

use std::fmt;

use thiserror::Error;

pub use auxiliary::{
    compute_v, dealiased_product, initial_v, nonlinear_term, state_equation_residual, v_tilde,
};
pub use projection::{project_p, project_q, Mat3, ProjectionSymbol, ZeroModeConvention};
pub use propagators::{apply_schrodinger, apply_uz, apply_uz_with, linear_operator};
pub use wave::{wave_energy, wave_forced_frozen, wave_homogeneous};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OperatorError {
    #[error("alpha must be a finite real >= 1, got {0}")]
    InvalidAlpha(f64),
}

/// The dimensionless speed ratio `α ≥ 1` of the full system.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct AlphaParam(f64);

impl AlphaParam {
    pub fn new(alpha: f64) -> Result<Self, OperatorError> {
        if alpha.is_finite() && alpha >= 1.0 {
            Ok(Self(alpha))
        } else {
            Err(OperatorError::InvalidAlpha(alpha))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// Selects the full system (finite α) or the electrostatic limit (α = ∞).
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Alpha {
    Finite(AlphaParam),
    Infinite,
}

impl Alpha {
    pub fn finite(alpha: f64) -> Result<Self, OperatorError> {
        AlphaParam::new(alpha).map(Alpha::Finite)
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Alpha::Infinite)
    }

    /// `α` as a float, `f64::INFINITY` for the limit system.
    pub fn value(self) -> f64 {
        match self {
            Alpha::Finite(a) => a.get(),
            Alpha::Infinite => f64::INFINITY,
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Finite(a) => write!(f, "{}", a.get()),
            Alpha::Infinite => f.write_str("inf"),
        }
    }
}
