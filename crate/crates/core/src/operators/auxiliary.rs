//! The auxiliary variable `v = ∂_t u` and the state equation
//! `iv − α∇×∇×u + ∇div u = nu` that ties it to `u`.

use num_complex::Complex64;

use super::propagators::{apply_schrodinger, linear_operator};
use super::{Alpha, AlphaParam, ProjectionSymbol};
use crate::spectral::{apply_multiplier, dealias, sobolev_norm, Field, ScalarField, VectorField};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// The product `nu`, formed in physical space and 2/3-dealiased (spectral result).
pub fn dealiased_product(n: &ScalarField, u: &VectorField) -> VectorField {
    dealias(&u.times_scalar(n))
}

/// Nonlinear term of the Schrödinger equation: `nu` for the full system,
/// `Q(nu)` for the limit system.
pub fn nonlinear_term(u: &VectorField, n: &ScalarField, alpha: Alpha) -> VectorField {
    let nu = dealiased_product(n, u);
    match alpha {
        Alpha::Finite(_) => nu,
        Alpha::Infinite => ProjectionSymbol::default().project_q(&nu),
    }
}

/// `v = −i(nu + α∇×∇×u − ∇div u)`; for `α = ∞`, `v = −i(Q(nu) − Δu)`.
///
/// Returned in spectral form.
pub fn compute_v(u: &VectorField, n: &ScalarField, alpha: Alpha) -> VectorField {
    let lu = linear_operator(u, alpha);
    let nl = nonlinear_term(u, n, alpha);
    (&lu + &nl).scaled(-I)
}

/// `v(0) = −iα∇×∇×u₀ + i∇div u₀ − i n₀u₀`.
pub fn initial_v(u0: &VectorField, n0: &ScalarField, alpha: AlphaParam) -> VectorField {
    compute_v(u0, n0, Alpha::Finite(alpha))
}

/// `‖iv − α∇×∇×u + ∇div u − nu‖_{L²}` (with `Q(nu)` and `−Δ` for `α = ∞`).
pub fn state_equation_residual(
    u: &VectorField,
    v: &VectorField,
    n: &ScalarField,
    alpha: Alpha,
) -> f64 {
    let lhs = v.to_spectral().scaled(I);
    let rhs = &linear_operator(u, alpha) + &nonlinear_term(u, n, alpha);
    sobolev_norm(&(&lhs - &rhs), 0.0)
}

/// Shifted variable `ṽ(t) = v(t) − U(αt)P(iαΔu₀)`.
pub fn v_tilde(v: &VectorField, u0: &VectorField, t: f64, alpha: AlphaParam) -> VectorField {
    let a = alpha.get();
    let grid = u0.grid().clone();
    let lap = apply_multiplier(u0, |idx| I * (-a * grid.k_squared(idx)));
    let layer = apply_schrodinger(&ProjectionSymbol::default().project_p(&lap), a * t);
    v - &layer
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::apply_uz;
    use crate::spectral::Grid;
    use std::f64::consts::PI;

    fn plane_wave(grid: &std::sync::Arc<Grid>, pol: [f64; 3]) -> VectorField {
        VectorField::from_fn(grid, |x| {
            let e = Complex64::from_polar(1.0, 2.0 * PI * x[0]);
            pol.map(|p| e * p)
        })
    }

    fn smooth_state(grid: &std::sync::Arc<Grid>) -> (VectorField, ScalarField) {
        let u = VectorField::from_fn(grid, |x| {
            [
                Complex64::new(x[1].sin(), (x[0] + x[2]).cos()),
                Complex64::new((2.0 * x[0]).cos(), 0.2),
                Complex64::new(0.1, x[1].sin() * x[2].cos()),
            ]
        });
        let n = ScalarField::from_real_fn(grid, |x| (x[0] - x[1]).cos() * 0.4);
        (u, n)
    }

    #[test]
    fn v_of_irrotational_wave() {
        let g = Grid::new(8, 1.0).unwrap();
        let u = plane_wave(&g, [1.0, 0.0, 0.0]);
        let zero = ScalarField::zeros(&g);
        let v = compute_v(&u, &zero, Alpha::finite(5.0).unwrap());
        let expect = u.clone().scaled(Complex64::new(0.0, -4.0 * PI * PI));
        assert!(sobolev_norm(&(&v - &expect), 0.0) < 1e-12);
        let v0 = compute_v(&VectorField::zeros(&g), &zero, Alpha::finite(5.0).unwrap());
        assert_eq!(sobolev_norm(&v0, 0.0), 0.0);
    }

    #[test]
    fn initial_v_examples() {
        let g = Grid::new(8, 1.0).unwrap();
        let zero = ScalarField::zeros(&g);
        let irr = plane_wave(&g, [1.0, 0.0, 0.0]);
        let a = initial_v(&irr, &zero, AlphaParam::new(1.0).unwrap());
        let b = initial_v(&irr, &zero, AlphaParam::new(50.0).unwrap());
        assert!(sobolev_norm(&(&a - &b), 0.0) < 1e-12);

        let sol = plane_wave(&g, [0.0, 1.0, 0.0]);
        for alpha in [1.0, 2.0, 8.0] {
            let v = initial_v(&sol, &zero, AlphaParam::new(alpha).unwrap());
            let expect = sol
                .clone()
                .scaled(Complex64::new(0.0, -alpha * 4.0 * PI * PI));
            assert!(sobolev_norm(&(&v - &expect), 0.0) < 1e-11 * alpha);
        }
    }

    #[test]
    fn residual_vanishes_for_computed_v() {
        let g = Grid::new(8, 2.0 * PI).unwrap();
        let (u, n) = smooth_state(&g);
        for alpha in [Alpha::finite(3.0).unwrap(), Alpha::Infinite] {
            let v = compute_v(&u, &n, alpha);
            let scale = sobolev_norm(&v, 0.0);
            assert!(state_equation_residual(&u, &v, &n, alpha) < 1e-12 * scale);
        }
    }

    #[test]
    fn residual_measures_perturbation() {
        let g = Grid::new(8, 2.0 * PI).unwrap();
        let (u, n) = smooth_state(&g);
        let alpha = Alpha::finite(2.0).unwrap();
        let v = compute_v(&u, &n, alpha);
        let w = VectorField::from_fn(&g, |x| [Complex64::new(x[2].cos(), 0.0); 3]);
        let delta = 1e-3 / sobolev_norm(&w, 0.0);
        let pert = &v + &w.scaled(Complex64::new(delta, 0.0));
        let r = state_equation_residual(&u, &pert, &n, alpha);
        assert!((r - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn linear_evolution_satisfies_state_equation() {
        // v = ∂_t U_Z(t)u₀ = −i L_α U_Z(t)u₀, computed per mode.
        let g = Grid::new(8, 2.0 * PI).unwrap();
        let (u0, _) = smooth_state(&g);
        let a = AlphaParam::new(6.0).unwrap();
        let zero = ScalarField::zeros(&g);
        let ut = apply_uz(&u0, 0.4, a);
        let v = linear_operator(&ut, Alpha::Finite(a)).scaled(-I);
        let scale = sobolev_norm(&v, 0.0);
        assert!(state_equation_residual(&ut, &v, &zero, Alpha::Finite(a)) < 1e-12 * scale);
    }

    #[test]
    fn v_tilde_removes_fast_layer_at_t0_for_solenoidal_data() {
        let g = Grid::new(8, 1.0).unwrap();
        let zero = ScalarField::zeros(&g);
        let sol = plane_wave(&g, [0.0, 0.0, 1.0]);
        let a = AlphaParam::new(9.0).unwrap();
        let v0 = initial_v(&sol, &zero, a);
        let vt = v_tilde(&v0, &sol, 0.0, a);
        assert!(sobolev_norm(&vt, 0.0) < 1e-10);
    }
}
