//! Experiments on the large-α limit: data generation, α sweeps against the
//! limit solution, error norms, rate fits, Strichartz decay of the fast
//! group and the initial layer of ill-prepared data.

mod data;
mod errors;
mod rate;
mod strichartz;
mod sweep;

use thiserror::Error;

use crate::solver::SolverError;
use crate::spectral::SpectralError;

pub use data::{data_norms, gen_data, gen_ill_prepared, gen_well_prepared, DataKind, DataRecipe};
pub use errors::{error_norms, ErrorAccumulator, ErrorNorms};
pub use rate::{fit_loglog, fit_rate, RateFit};
pub use strichartz::{strichartz_decay, StrichartzPair, StrichartzRecord, StrichartzReport};
pub use sweep::{
    alpha_sweep, alpha_sweep_outcome, cross_check, initial_layer_demo, sweep_one, CrossCheck,
    LayerRecord, Reference, SweepOutcome, SweepRecord,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("invalid data recipe: {0}")]
    InvalidRecipe(String),
    #[error("invalid alpha list: {0}")]
    InvalidAlphas(String),
    #[error("samples do not match: {0}")]
    SampleMismatch(String),
    #[error("rate fit needs at least 3 usable points, got {0}")]
    TooFewPoints(usize),
    #[error("rate fit is degenerate (all abscissae equal)")]
    DegenerateFit,
    #[error("(q, r) = ({q}, {r}) is not an admissible pair")]
    NotAdmissible { q: f64, r: f64 },
    #[error("horizon must be positive, got {0}")]
    InvalidHorizon(f64),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

#[cfg(test)]
mod tests;
