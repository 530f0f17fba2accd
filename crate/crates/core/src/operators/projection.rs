//! Helmholtz projections as per-mode 3×3 symbols.

use num_complex::Complex64;

use crate::spectral::{Field, Grid, VectorField};

pub type Mat3 = [[f64; 3]; 3];

const IDENTITY: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
const ZERO: Mat3 = [[0.0; 3]; 3];

/// Where the constant (k = 0) fields are placed by the projections.
///
/// Constants are both curl- and divergence-free, so the symbol
/// `k⊗k/|k|^2` leaves the choice open.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroModeConvention {
    /// `Q̂(0) = 0`, `P̂(0) = 1`.
    Solenoidal,
    /// `Q̂(0) = 1`, `P̂(0) = 0`.
    Irrotational,
}

/// Per-mode symbols `Q̂(k) = k⊗k/|k|^2` and `P̂(k) = 1 - Q̂(k)`.
///
/// `k` is the derivative wavenumber (Nyquist components zeroed), which keeps
/// `div ∘ P` and `curl ∘ Q` exactly zero on the grid. Modes whose derivative
/// wavenumber vanishes use the zero-mode blocks.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProjectionSymbol {
    q_zero: Mat3,
    p_zero: Mat3,
}

impl Default for ProjectionSymbol {
    fn default() -> Self {
        Self::with_convention(ZeroModeConvention::Irrotational)
    }
}

impl ProjectionSymbol {
    pub fn with_convention(conv: ZeroModeConvention) -> Self {
        match conv {
            ZeroModeConvention::Solenoidal => Self {
                q_zero: ZERO,
                p_zero: IDENTITY,
            },
            ZeroModeConvention::Irrotational => Self {
                q_zero: IDENTITY,
                p_zero: ZERO,
            },
        }
    }

    /// Arbitrary zero-mode blocks. Inconsistent choices (`q + p != 1`) break
    /// the projection algebra; `verify` uses this for fault injection.
    pub fn with_zero_mode_blocks(q_zero: Mat3, p_zero: Mat3) -> Self {
        Self { q_zero, p_zero }
    }

    pub fn q_hat(&self, grid: &Grid, idx: usize) -> Mat3 {
        let k = grid.deriv_wavenumber(idx);
        let k2 = dot(k, k);
        if k2 == 0.0 {
            return self.q_zero;
        }
        let mut m = ZERO;
        for a in 0..3 {
            for b in 0..3 {
                m[a][b] = k[a] * k[b] / k2;
            }
        }
        m
    }

    pub fn p_hat(&self, grid: &Grid, idx: usize) -> Mat3 {
        let k = grid.deriv_wavenumber(idx);
        if dot(k, k) == 0.0 {
            return self.p_zero;
        }
        let q = self.q_hat(grid, idx);
        let mut m = IDENTITY;
        for a in 0..3 {
            for b in 0..3 {
                m[a][b] -= q[a][b];
            }
        }
        m
    }

    /// `(Q̂ û, P̂ û)` at one mode.
    #[inline]
    pub fn split(
        &self,
        grid: &Grid,
        idx: usize,
        u: [Complex64; 3],
    ) -> ([Complex64; 3], [Complex64; 3]) {
        let k = grid.deriv_wavenumber(idx);
        let k2 = dot(k, k);
        if k2 == 0.0 {
            return (mat_vec(&self.q_zero, u), mat_vec(&self.p_zero, u));
        }
        let proj = (k[0] * u[0] + k[1] * u[1] + k[2] * u[2]) / k2;
        let q = [k[0] * proj, k[1] * proj, k[2] * proj];
        (q, [u[0] - q[0], u[1] - q[1], u[2] - q[2]])
    }

    /// Irrotational part `Q f`.
    pub fn project_q(&self, f: &VectorField) -> VectorField {
        self.map_modes(f, |q, _| q)
    }

    /// Solenoidal part `P f`.
    pub fn project_p(&self, f: &VectorField) -> VectorField {
        self.map_modes(f, |_, p| p)
    }

    /// Apply `combine(Q̂û, P̂û)` at every mode; the result is spectral.
    pub fn map_modes(
        &self,
        f: &VectorField,
        combine: impl Fn([Complex64; 3], [Complex64; 3]) -> [Complex64; 3],
    ) -> VectorField {
        self.map_modes_indexed(f, |_, q, p| combine(q, p))
    }

    #[allow(clippy::needless_range_loop)]
    pub fn map_modes_indexed(
        &self,
        f: &VectorField,
        combine: impl Fn(usize, [Complex64; 3], [Complex64; 3]) -> [Complex64; 3],
    ) -> VectorField {
        let mut g = f.to_spectral();
        let grid = g.grid().clone();
        let comps = g.components_mut();
        for idx in 0..grid.len() {
            let u = [comps[0][idx], comps[1][idx], comps[2][idx]];
            let (q, p) = self.split(&grid, idx, u);
            let out = combine(idx, q, p);
            for a in 0..3 {
                comps[a][idx] = out[a];
            }
        }
        g
    }
}

#[inline]
fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
fn mat_vec(m: &Mat3, u: [Complex64; 3]) -> [Complex64; 3] {
    [0, 1, 2].map(|a| m[a][0] * u[0] + m[a][1] * u[1] + m[a][2] * u[2])
}

/// Irrotational part of `f` under the default symbol.
pub fn project_q(f: &VectorField) -> VectorField {
    ProjectionSymbol::default().project_q(f)
}

/// Solenoidal part of `f` under the default symbol.
pub fn project_p(f: &VectorField) -> VectorField {
    ProjectionSymbol::default().project_p(f)
}
