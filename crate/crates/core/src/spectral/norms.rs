//! Norms of the solution spaces: `H^s`, `L^r`, `W^{2,r}` and temporal `L^q`.

use num_complex::Complex64;

use super::diff::jacobian_and_hessian_moduli;
use super::{Field, Repr, SpectralError, VectorField};

/// `H^s` norm with multiplier `(1+|k|^2)^{s/2}`, normalized so `s = 0` gives
/// the physical `L^2` norm. Vector fields sum over components.
pub fn sobolev_norm<F: Field>(f: &F, s: f64) -> f64 {
    let g = f.to_spectral();
    let grid = g.grid();
    let mut acc = 0.0;
    for comp in g.components() {
        for (idx, c) in comp.iter().enumerate() {
            let w = if s == 0.0 {
                1.0
            } else {
                (1.0 + grid.k_squared(idx)).powf(s)
            };
            acc += w * c.norm_sqr();
        }
    }
    (grid.volume() * acc).sqrt()
}

/// Spatial `L^r` norm by grid quadrature; `r = ∞` gives the max modulus.
/// Vector fields use the pointwise Euclidean modulus.
pub fn lebesgue_norm<F: Field>(f: &F, r: f64) -> f64 {
    assert!(r >= 1.0, "Lebesgue exponent must be >= 1, got {r}");
    let g = f.to_physical();
    let moduli = pointwise_moduli(g.components());
    lebesgue_of_moduli(&moduli, g.grid().cell_volume(), r)
}

pub(crate) fn pointwise_moduli(comps: &[Vec<Complex64>]) -> Vec<f64> {
    let len = comps[0].len();
    (0..len)
        .map(|i| comps.iter().map(|c| c[i].norm_sqr()).sum::<f64>().sqrt())
        .collect()
}

pub(crate) fn lebesgue_of_moduli(moduli: &[f64], cell_volume: f64, r: f64) -> f64 {
    if r.is_infinite() {
        return moduli.iter().copied().fold(0.0, f64::max);
    }
    if r == 2.0 {
        return (cell_volume * moduli.iter().map(|m| m * m).sum::<f64>()).sqrt();
    }
    let sum: f64 = moduli.iter().map(|m| m.powf(r)).sum();
    (cell_volume * sum).powf(1.0 / r)
}

/// `W^{2,r}` norm `‖f‖_{L^r} + ‖∇f‖_{L^r} + ‖∇²f‖_{L^r}`, with derivatives
/// taken spectrally and the Jacobian/Hessian measured by their pointwise
/// Frobenius modulus.
pub fn sobolev_lebesgue_norm(f: &VectorField, r: f64) -> f64 {
    let cell = f.grid().cell_volume();
    let (jac, hess) = jacobian_and_hessian_moduli(f);
    lebesgue_norm(f, r) + lebesgue_of_moduli(&jac, cell, r) + lebesgue_of_moduli(&hess, cell, r)
}

/// Temporal `L^q` norm of sampled spatial norms `(t, a(t))`.
///
/// `q = ∞` is the sample maximum; finite `q` integrates `a^q` with the
/// trapezoid rule.
pub fn strichartz_norm(samples: &[(f64, f64)], q: f64) -> Result<f64, SpectralError> {
    if q.is_nan() || q < 1.0 {
        return Err(SpectralError::InvalidExponent(q));
    }
    if samples.windows(2).any(|w| w[1].0 < w[0].0) {
        return Err(SpectralError::UnorderedSamples);
    }
    if q.is_infinite() {
        return samples
            .iter()
            .map(|s| s.1)
            .reduce(f64::max)
            .ok_or(SpectralError::TooFewSamples(0));
    }
    if samples.len() < 2 {
        return Err(SpectralError::TooFewSamples(samples.len()));
    }
    let integral: f64 = samples
        .windows(2)
        .map(|w| 0.5 * (w[1].0 - w[0].0) * (w[0].1.powf(q) + w[1].1.powf(q)))
        .sum();
    Ok(integral.powf(1.0 / q))
}

/// 2/3-rule truncation: zero every mode with some `|m_i| > n/3`.
pub fn dealias<F: Field>(f: &F) -> F {
    let mut g = f.to_spectral();
    let grid = g.grid().clone();
    let cutoff = grid.n() as i64 / 3;
    for comp in g.components_mut() {
        for (idx, c) in comp.iter_mut().enumerate() {
            if grid.mode(idx).iter().any(|m| m.abs() > cutoff) {
                *c = Complex64::default();
            }
        }
    }
    debug_assert_eq!(g.repr(), Repr::Spectral);
    g
}

/// Multiply every spectral coefficient by a per-mode scalar.
pub fn apply_multiplier<F: Field>(f: &F, mult: impl Fn(usize) -> Complex64) -> F {
    let mut g = f.to_spectral();
    for comp in g.components_mut() {
        for (idx, c) in comp.iter_mut().enumerate() {
            *c *= mult(idx);
        }
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{Grid, ScalarField};
    use std::f64::consts::PI;

    #[test]
    fn strichartz_constant_and_max() {
        let s: Vec<_> = (0..=10).map(|i| (i as f64 / 10.0, 2.5)).collect();
        assert!((strichartz_norm(&s, 2.0).unwrap() - 2.5).abs() < 1e-14);
        let s = [(0.0, 1.0), (0.5, 3.0), (1.0, 2.0)];
        assert_eq!(strichartz_norm(&s, f64::INFINITY).unwrap(), 3.0);
    }

    #[test]
    fn strichartz_linear_ramp() {
        let s: Vec<_> = (0..1001)
            .map(|i| (i as f64 / 1000.0, i as f64 / 1000.0))
            .collect();
        let v = strichartz_norm(&s, 2.0).unwrap();
        assert!((v - 3f64.sqrt().recip()).abs() < 1e-4);
    }

    #[test]
    fn strichartz_errors() {
        assert!(matches!(
            strichartz_norm(&[(0.0, 1.0)], 2.0),
            Err(SpectralError::TooFewSamples(1))
        ));
        assert!(strichartz_norm(&[(1.0, 1.0), (0.0, 1.0)], 2.0).is_err());
        assert!(strichartz_norm(&[(0.0, 1.0), (1.0, 1.0)], 0.5).is_err());
    }

    #[test]
    fn unit_field_lebesgue_norms() {
        let g = Grid::new(8, 1.0).unwrap();
        let f = ScalarField::from_real_fn(&g, |_| 1.0);
        for r in [1.0, 2.0, 3.5, 6.0, f64::INFINITY] {
            assert!((lebesgue_norm(&f, r) - 1.0).abs() < 1e-14);
        }
        let e = ScalarField::from_complex_fn(&g, |x| Complex64::from_polar(1.0, 2.0 * PI * x[0]));
        assert!((lebesgue_norm(&e, 6.0) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cosine_sixth_power() {
        // ∫_0^1 cos^6(2πx) dx = 5/16; dense midpoint quadrature as the cross-check.
        let dense: f64 = (0..100_000)
            .map(|i| (2.0 * PI * (i as f64 + 0.5) / 100_000.0).cos().powi(6))
            .sum::<f64>()
            / 100_000.0;
        assert!((dense - 5.0 / 16.0).abs() < 1e-10);
        for n in [8, 16, 32] {
            let g = Grid::new(n, 1.0).unwrap();
            let f = ScalarField::from_real_fn(&g, |x| (2.0 * PI * x[0]).cos());
            assert!((lebesgue_norm(&f, 6.0).powi(6) - 5.0 / 16.0).abs() < 1e-13);
        }
    }

    #[test]
    fn sobolev_single_mode() {
        let g = Grid::new(8, 1.0).unwrap();
        let f = ScalarField::from_complex_fn(&g, |x| Complex64::from_polar(1.0, 2.0 * PI * x[0]));
        assert!((sobolev_norm(&f, 2.0) - (1.0 + 4.0 * PI * PI)).abs() < 1e-11);
        assert!((sobolev_norm(&f, 0.0) - 1.0).abs() < 1e-14);
        assert_eq!(sobolev_norm(&ScalarField::zeros(&g), 2.0), 0.0);
    }

    #[test]
    fn dealias_examples() {
        let g = Grid::new(12usize.next_power_of_two(), 1.0).unwrap();
        let low = ScalarField::from_real_fn(&g, |x| (2.0 * PI * 5.0 * x[1]).cos());
        let d = dealias(&low);
        let diff = &d - &low.to_spectral();
        assert!(sobolev_norm(&diff, 0.0) < 1e-14);
        let nyq = ScalarField::from_real_fn(&g, |x| (PI * 16.0 * x[0]).cos());
        assert!(sobolev_norm(&nyq, 0.0) > 0.5);
        assert_eq!(sobolev_norm(&dealias(&nyq), 0.0), 0.0);
    }
}
