//! Conserved quantities.

use super::{SolverError, SystemState};
use crate::operators::{Alpha, ProjectionSymbol};
use crate::spectral::{sobolev_norm, Field};

/// `‖u‖_{L²}`.
pub fn mass(s: &SystemState) -> f64 {
    sobolev_norm(&s.u, 0.0)
}

/// Discrete energy
/// `α‖∇×u‖² + ‖div u‖² + ∫ n|u|² + ½‖n‖² + ½‖|∇|^{-1} ∂_t n‖²`.
///
/// The two derivative terms are evaluated with the symbol of the linear
/// operator, `|k|²(α|P̂û|² + |Q̂û|²)`, and the coupling term with grid
/// quadrature, which makes this the exact invariant of the space-discrete
/// system. For `α = ∞` the curl term is dropped.
#[allow(clippy::needless_range_loop)]
pub fn hamiltonian(s: &SystemState, alpha: Alpha) -> Result<f64, SolverError> {
    let grid = s.u.grid().clone();
    let nt = s.nt.to_spectral();
    let nt_mean = nt.values()[0].norm();
    let nt_scale = sobolev_norm(&nt, 0.0) / grid.volume().sqrt();
    if nt_mean > 1e-9 * nt_scale.max(1e-300) && nt_mean > 1e-14 {
        return Err(SolverError::NonZeroMeanNt(nt_mean));
    }

    let u = s.u.to_spectral();
    let comps = u.components();
    let sym = ProjectionSymbol::default();
    let mut quad = 0.0;
    for idx in 0..grid.len() {
        let k2 = grid.k_squared(idx);
        if k2 == 0.0 {
            continue;
        }
        let v = [comps[0][idx], comps[1][idx], comps[2][idx]];
        quad += match alpha {
            Alpha::Finite(a) => {
                let (q, p) = sym.split(&grid, idx, v);
                let nq: f64 = q.iter().map(|c| c.norm_sqr()).sum();
                let np: f64 = p.iter().map(|c| c.norm_sqr()).sum();
                k2 * (a.get() * np + nq)
            }
            Alpha::Infinite => k2 * v.iter().map(|c| c.norm_sqr()).sum::<f64>(),
        };
    }
    quad *= grid.volume();

    let n = s.n.to_physical();
    let rho = s.u.modulus_squared();
    let coupling: f64 = grid.cell_volume()
        * n.values()
            .iter()
            .zip(rho.values())
            .map(|(a, b)| a.re * b.re)
            .sum::<f64>();
    let n_sq = sobolev_norm(&n, 0.0).powi(2);
    let nt_sq: f64 = grid.volume()
        * (1..grid.len())
            .map(|idx| nt.values()[idx].norm_sqr() / grid.k_squared(idx))
            .sum::<f64>();
    Ok(quad + coupling + 0.5 * n_sq + 0.5 * nt_sq)
}
