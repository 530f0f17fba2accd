//! Periodic-grid fields, spectral transforms, differentiation and norms.
//!
//! Fields live on the torus `[0, L)^3`. All multipliers use angular
//! wavenumbers `k = 2π m / L`, so the Laplacian symbol is `-|k|^2`.
//! Spectral coefficients are normalized Fourier-series coefficients, which
//! makes Parseval read `‖f‖²_{L²} = L³ Σ_k |f̂(k)|²`.

mod diff;
mod fft;
mod field;
mod grid;
mod norms;

use thiserror::Error;

pub use diff::{curl, divergence, gradient, partial};
pub(crate) use field::assert_same_grid;
pub use field::{Field, Repr, ScalarField, VectorField};
pub use grid::{mode_number, Grid};
pub use norms::{
    apply_multiplier, dealias, lebesgue_norm, sobolev_lebesgue_norm, sobolev_norm, strichartz_norm,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectralError {
    #[error("grid size must be a power of two >= 4, got {0}")]
    InvalidGridSize(usize),
    #[error("domain length must be positive and finite, got {0}")]
    InvalidLength(f64),
    #[error("buffer length {found} does not match grid size {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("temporal norm needs at least 2 samples, got {0}")]
    TooFewSamples(usize),
    #[error("time samples are not ordered")]
    UnorderedSamples,
    #[error("invalid Lebesgue exponent {0}")]
    InvalidExponent(f64),
}

/// Convert to the requested representation.
pub fn to_spectral<F: Field>(f: &F) -> F {
    f.to_spectral()
}

pub fn to_physical<F: Field>(f: &F) -> F {
    f.to_physical()
}
