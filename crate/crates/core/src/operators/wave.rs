//! Exact wave half-groups `cos(t|∇|)`, `sin(t|∇|)/|∇|` and the frozen-source
//! Duhamel step for `∂_tt n − Δn = Δg`.

use num_complex::Complex64;

use crate::spectral::{assert_same_grid, Field, ScalarField};

/// Free wave evolution: returns `(n(t), ∂_t n(t))` in spectral form.
pub fn wave_homogeneous(n0: &ScalarField, n1: &ScalarField, t: f64) -> (ScalarField, ScalarField) {
    evolve(n0, n1, None, t)
}

/// Exact solution of `∂_tt n − Δn = Δg` with `g` constant in time.
///
/// Per mode with `ω = |k| > 0`:
/// `n̂(t) = (n̂₀ + ĝ) cos ωt + n̂₁ sin(ωt)/ω − ĝ`. The zero mode carries no
/// source and grows linearly.
pub fn wave_forced_frozen(
    n0: &ScalarField,
    n1: &ScalarField,
    g: &ScalarField,
    t: f64,
) -> (ScalarField, ScalarField) {
    evolve(n0, n1, Some(g), t)
}

fn evolve(
    n0: &ScalarField,
    n1: &ScalarField,
    g: Option<&ScalarField>,
    t: f64,
) -> (ScalarField, ScalarField) {
    assert_same_grid(n0.grid(), n1.grid());
    let grid = n0.grid().clone();
    let mut n = n0.to_spectral();
    let mut nt = n1.to_spectral();
    let g = g.map(|g| {
        assert_same_grid(&grid, g.grid());
        g.to_spectral()
    });
    let (nv, ntv) = (&mut n.components_mut()[0], &mut nt.components_mut()[0]);
    for idx in 0..grid.len() {
        let (a, b) = (nv[idx], ntv[idx]);
        let omega = grid.k_squared(idx).sqrt();
        if omega == 0.0 {
            nv[idx] = a + b * t;
            continue;
        }
        let src = g.as_ref().map_or(Complex64::default(), |g| g.values()[idx]);
        let (s, c) = (omega * t).sin_cos();
        let shifted = a + src;
        nv[idx] = shifted * c + b * (s / omega) - src;
        ntv[idx] = -shifted * (omega * s) + b * c;
    }
    (n, nt)
}

/// Discrete wave energy `L³ Σ_{k≠0} (|k|^2 |n̂|^2 + |∂_t n̂|^2)`.
pub fn wave_energy(n: &ScalarField, nt: &ScalarField) -> f64 {
    let grid = n.grid().clone();
    let n = n.to_spectral();
    let nt = nt.to_spectral();
    let sum: f64 = (1..grid.len())
        .map(|idx| grid.k_squared(idx) * n.values()[idx].norm_sqr() + nt.values()[idx].norm_sqr())
        .sum();
    grid.volume() * sum
}
