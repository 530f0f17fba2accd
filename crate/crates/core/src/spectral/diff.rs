//! Spectral differentiation. First-derivative multipliers are `i k` with the
//! Nyquist component zeroed, so derivatives of real fields stay real.

use num_complex::Complex64;

use super::norms::{apply_multiplier, pointwise_moduli};
use super::{Field, ScalarField, VectorField};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// `∂f/∂x_axis`.
pub fn partial<F: Field>(f: &F, axis: usize) -> F {
    let grid = f.grid().clone();
    apply_multiplier(f, |idx| I * grid.deriv_wavenumber(idx)[axis])
}

pub fn gradient(f: &ScalarField) -> VectorField {
    let fs = f.to_spectral();
    let grid = fs.grid().clone();
    let comps = [0, 1, 2].map(|a| partial(&fs, a).values().to_vec());
    VectorField::from_components(&grid, fs.repr(), comps).expect("same grid")
}

/// `div u`; complex-valued in general.
pub fn divergence(u: &VectorField) -> ScalarField {
    let us = u.to_spectral();
    let grid = us.grid().clone();
    let mut out = vec![Complex64::default(); grid.len()];
    for (idx, o) in out.iter_mut().enumerate() {
        let k = grid.deriv_wavenumber(idx);
        *o = I
            * (0..3)
                .map(|a| k[a] * us.component(a)[idx])
                .sum::<Complex64>();
    }
    ScalarField::from_values(&grid, us.repr(), out, false).expect("same grid")
}

/// `∇ × u`.
pub fn curl(u: &VectorField) -> VectorField {
    let us = u.to_spectral();
    let grid = us.grid().clone();
    let mut comps = [
        vec![Complex64::default(); grid.len()],
        vec![Complex64::default(); grid.len()],
        vec![Complex64::default(); grid.len()],
    ];
    let (ux, uy, uz) = (us.component(0), us.component(1), us.component(2));
    for idx in 0..grid.len() {
        let k = grid.deriv_wavenumber(idx);
        comps[0][idx] = I * (k[1] * uz[idx] - k[2] * uy[idx]);
        comps[1][idx] = I * (k[2] * ux[idx] - k[0] * uz[idx]);
        comps[2][idx] = I * (k[0] * uy[idx] - k[1] * ux[idx]);
    }
    VectorField::from_components(&grid, us.repr(), comps).expect("same grid")
}

/// Pointwise Frobenius moduli of `∇u` and `∇²u` in physical space.
pub(crate) fn jacobian_and_hessian_moduli(u: &VectorField) -> (Vec<f64>, Vec<f64>) {
    let us = u.to_spectral();
    let grid = us.grid().clone();
    let mut jac = Vec::with_capacity(9);
    let mut hess = Vec::with_capacity(27);
    for c in 0..3 {
        let uc = ScalarField::from_values(&grid, us.repr(), us.component(c).to_vec(), false)
            .expect("same grid");
        for a in 0..3 {
            let d = partial(&uc, a);
            for b in 0..3 {
                hess.push(partial(&d, b).into_physical().values().to_vec());
            }
            jac.push(d.into_physical().values().to_vec());
        }
    }
    (pointwise_moduli(&jac), pointwise_moduli(&hess))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{sobolev_norm, Grid};
    use std::f64::consts::PI;

    #[test]
    fn derivative_of_sine() {
        let g = Grid::new(16, 2.0 * PI).unwrap();
        let f = ScalarField::from_real_fn(&g, |x| (3.0 * x[1]).sin());
        let d = partial(&f, 1).into_physical();
        let exact = ScalarField::from_real_fn(&g, |x| 3.0 * (3.0 * x[1]).cos());
        assert!(sobolev_norm(&(&d - &exact), 0.0) < 1e-12);
        assert!(sobolev_norm(&partial(&f, 0), 0.0) < 1e-14);
    }

    #[test]
    fn curl_of_gradient_and_div_of_curl_vanish() {
        let g = Grid::new(8, 2.0 * PI).unwrap();
        let phi = ScalarField::from_real_fn(&g, |x| (x[0] + 2.0 * x[1]).sin() * x[2].cos());
        let grad = gradient(&phi);
        assert!(sobolev_norm(&curl(&grad), 0.0) < 1e-12);
        let a = VectorField::from_fn(&g, |x| {
            [x[1].sin(), (x[2] - x[0]).cos(), (2.0 * x[0]).sin()].map(|v| Complex64::new(v, 0.0))
        });
        assert!(sobolev_norm(&divergence(&curl(&a)), 0.0) < 1e-12);
    }
}
