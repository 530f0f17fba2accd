//! Pseudospectral simulation of the 3D vectorial Zakharov system and its
//! electrostatic (large-α) limit on a periodic box.
//!
//! Modules, bottom-up:
//! - [`spectral`]: grids, fields, FFTs, derivatives and norms.
//! - [`operators`]: Helmholtz projections, Schrödinger and two-speed
//!   propagators, wave half-groups, the auxiliary variable `v = ∂_t u`.
//! - [`solver`]: Strang-split time stepping for the full and limit systems.
//! - [`limitlab`]: data generators, α sweeps, error norms, rate fits,
//!   Strichartz decay and initial-layer experiments.

pub mod limitlab;
pub mod operators;
pub mod solver;
pub mod spectral;

pub use limitlab::{DataKind, DataRecipe, RateFit, SweepRecord};
pub use operators::{Alpha, AlphaParam};
pub use solver::{SolverParams, SystemState, Trajectory};
pub use spectral::{Field, Grid, Repr, ScalarField, VectorField};
