//! One Strang step for each system.

use num_complex::Complex64;

use super::{SolverError, SystemState};
use crate::operators::{
    apply_schrodinger, apply_uz, wave_forced_frozen, AlphaParam, ProjectionSymbol,
};
use crate::spectral::{Field, ScalarField, VectorField};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Pointwise `u ← e^{-i n τ} u`; returns physical `u`.
fn phase_kick(u: VectorField, n: &ScalarField, tau: f64) -> VectorField {
    let mut u = u.into_physical();
    let phases: Vec<Complex64> = n
        .to_physical()
        .values()
        .iter()
        .map(|v| Complex64::from_polar(1.0, -tau * v.re))
        .collect();
    for comp in u.components_mut() {
        for (c, p) in comp.iter_mut().zip(&phases) {
            *c *= p;
        }
    }
    u
}

/// Midpoint step of size `τ` for `∂_t u = -i Q(n u)` with `n` frozen;
/// returns spectral `u`.
fn projected_kick(u: VectorField, n: &ScalarField, tau: f64) -> VectorField {
    let sym = ProjectionSymbol::default();
    let u0 = u.into_spectral();
    let force = |w: &VectorField| sym.project_q(&w.times_scalar(n));
    let half = &u0 - &force(&u0).scaled(I * (0.5 * tau));
    &u0 - &force(&half).scaled(I * tau)
}

fn average_source(a: &ScalarField, b: &ScalarField) -> ScalarField {
    (a + b).scaled(Complex64::new(0.5, 0.0))
}

fn check_finite(s: &SystemState) -> Result<(), SolverError> {
    if s.u.is_finite() && s.n.is_finite() && s.nt.is_finite() {
        Ok(())
    } else {
        Err(SolverError::Diverged { t: s.t })
    }
}

pub(super) fn zg(s: &SystemState, alpha: AlphaParam, dt: f64) -> Result<SystemState, SolverError> {
    let u = phase_kick(s.u.clone(), &s.n, 0.5 * dt);
    let before = u.modulus_squared();
    let u = apply_uz(&u, dt, alpha).into_physical();
    let after = u.modulus_squared();
    let (n, nt) = wave_forced_frozen(&s.n, &s.nt, &average_source(&before, &after), dt);
    let n = n.into_physical();
    let u = phase_kick(u, &n, 0.5 * dt);
    let out = SystemState {
        u,
        n,
        nt,
        t: s.t + dt,
    };
    check_finite(&out)?;
    Ok(out)
}

pub(super) fn zl(s: &SystemState, dt: f64) -> Result<SystemState, SolverError> {
    let u = projected_kick(s.u.clone(), &s.n, 0.5 * dt).into_physical();
    let before = u.modulus_squared();
    let u = apply_schrodinger(&u, dt).into_physical();
    let after = u.modulus_squared();
    let (n, nt) = wave_forced_frozen(&s.n, &s.nt, &average_source(&before, &after), dt);
    let n = n.into_physical();
    let u = projected_kick(u, &n, 0.5 * dt).into_physical();
    let out = SystemState {
        u,
        n,
        nt,
        t: s.t + dt,
    };
    check_finite(&out)?;
    Ok(out)
}
