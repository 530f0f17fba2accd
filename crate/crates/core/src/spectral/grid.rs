//! Periodic cubic grid and its angular wavenumbers.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::SpectralError;

/// A periodic grid on the cube `[0, L)^3` with `n` points per dimension.
///
/// Flat storage is x-fastest: `index(i, j, k) = i + n * (j + n * k)`.
/// Mode `m` along an axis has angular wavenumber `2π m / L`, with `m` in the
/// centered range `-n/2 ..= n/2 - 1`. The `-n/2` entry is the Nyquist mode.
pub struct Grid {
    n: usize,
    length: f64,
    wavenumbers: Vec<f64>,
    deriv_wavenumbers: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl Grid {
    pub fn new(n: usize, length: f64) -> Result<Arc<Self>, SpectralError> {
        if n < 4 || !n.is_power_of_two() {
            return Err(SpectralError::InvalidGridSize(n));
        }
        if !(length.is_finite() && length > 0.0) {
            return Err(SpectralError::InvalidLength(length));
        }
        let wavenumbers: Vec<f64> = (0..n)
            .map(|i| 2.0 * PI * mode_number(i, n) as f64 / length)
            .collect();
        let deriv_wavenumbers = wavenumbers
            .iter()
            .enumerate()
            .map(|(i, &k)| if i == n / 2 { 0.0 } else { k })
            .collect();
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n);
        let inverse = planner.plan_fft_inverse(n);
        Ok(Arc::new(Self {
            n,
            length,
            wavenumbers,
            deriv_wavenumbers,
            forward,
            inverse,
        }))
    }

    /// Points per dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Domain period `L`.
    pub fn length(&self) -> f64 {
        self.length
    }

    /// Total number of grid points, `n^3`.
    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(3)
    }

    pub fn volume(&self) -> f64 {
        self.length.powi(3)
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        i + self.n * (j + self.n * k)
    }

    #[inline]
    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let n = self.n;
        [idx % n, (idx / n) % n, idx / (n * n)]
    }

    /// Physical coordinates of a grid point.
    pub fn position(&self, idx: usize) -> [f64; 3] {
        let h = self.spacing();
        let [i, j, k] = self.coords(idx);
        [i as f64 * h, j as f64 * h, k as f64 * h]
    }

    /// Signed integer mode numbers of a flat spectral index.
    pub fn mode(&self, idx: usize) -> [i64; 3] {
        let [i, j, k] = self.coords(idx);
        [
            mode_number(i, self.n),
            mode_number(j, self.n),
            mode_number(k, self.n),
        ]
    }

    /// Flat spectral index holding the given mode numbers (taken modulo `n`).
    pub fn mode_to_index(&self, m: [i64; 3]) -> usize {
        let n = self.n as i64;
        let w = |x: i64| x.rem_euclid(n) as usize;
        self.index(w(m[0]), w(m[1]), w(m[2]))
    }

    /// True if any component of the mode sits on the Nyquist index.
    pub fn is_nyquist(&self, idx: usize) -> bool {
        self.coords(idx).contains(&(self.n / 2))
    }

    /// Angular wavenumber vector of a flat spectral index.
    #[inline]
    pub fn wavenumber(&self, idx: usize) -> [f64; 3] {
        let [i, j, k] = self.coords(idx);
        [
            self.wavenumbers[i],
            self.wavenumbers[j],
            self.wavenumbers[k],
        ]
    }

    /// Wavenumber used by first-derivative multipliers: Nyquist components are zero.
    #[inline]
    pub fn deriv_wavenumber(&self, idx: usize) -> [f64; 3] {
        let [i, j, k] = self.coords(idx);
        [
            self.deriv_wavenumbers[i],
            self.deriv_wavenumbers[j],
            self.deriv_wavenumbers[k],
        ]
    }

    /// `|k|^2`, the symbol of `-Δ`.
    #[inline]
    pub fn k_squared(&self, idx: usize) -> f64 {
        let k = self.wavenumber(idx);
        k[0] * k[0] + k[1] * k[1] + k[2] * k[2]
    }

    /// Largest `|k|` over modes where `coeffs` is nonzero.
    pub fn max_active_wavenumber(&self, coeffs: &[Complex64]) -> f64 {
        coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm_sqr() > 0.0)
            .map(|(idx, _)| self.k_squared(idx))
            .fold(0.0, f64::max)
            .sqrt()
    }

    pub(crate) fn forward_plan(&self) -> &Arc<dyn Fft<f64>> {
        &self.forward
    }

    pub(crate) fn inverse_plan(&self) -> &Arc<dyn Fft<f64>> {
        &self.inverse
    }

    /// Same resolution and period.
    pub fn same_as(&self, other: &Grid) -> bool {
        self.n == other.n && self.length == other.length
    }
}

impl fmt::Debug for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Grid")
            .field("n", &self.n)
            .field("length", &self.length)
            .finish()
    }
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

/// Centered mode number of storage index `i` on an `n`-point axis.
#[inline]
pub fn mode_number(i: usize, n: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_sizes() {
        assert!(Grid::new(2, 1.0).is_err());
        assert!(Grid::new(12, 1.0).is_err());
        assert!(Grid::new(8, 0.0).is_err());
        assert!(Grid::new(8, f64::NAN).is_err());
        assert!(Grid::new(8, 1.0).is_ok());
    }

    #[test]
    fn zero_index_has_zero_wavenumber() {
        let g = Grid::new(8, 3.0).unwrap();
        assert_eq!(g.wavenumber(0), [0.0; 3]);
        assert_eq!(g.k_squared(0), 0.0);
    }

    #[test]
    fn mode_numbers_are_centered() {
        let n = 8;
        let ms: Vec<i64> = (0..n).map(|i| mode_number(i, n)).collect();
        assert_eq!(ms, vec![0, 1, 2, 3, -4, -3, -2, -1]);
        let g = Grid::new(n, 2.0 * PI).unwrap();
        let idx = g.index(4, 1, 7);
        assert!(g.is_nyquist(idx));
        assert_eq!(g.mode(idx), [-4, 1, -1]);
        assert_eq!(g.deriv_wavenumber(idx), [0.0, 1.0, -1.0]);
        assert_eq!(g.mode_to_index([-4, 1, -1]), idx);
    }
}
