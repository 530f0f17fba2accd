//! Scalar and vector fields with a physical/spectral representation flag.

use std::ops::{Add, Sub};
use std::sync::Arc;

use num_complex::Complex64;

use super::fft::{fft3, Direction};
use super::{Grid, SpectralError};

/// Which representation the stored values are in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Repr {
    /// Samples at the grid points.
    Physical,
    /// Fourier-series coefficients `f̂(m) = n^{-3} Σ_x f(x) e^{-ik·x}`.
    Spectral,
}

/// Common surface of [`ScalarField`] and [`VectorField`].
///
/// Fields are values: transforms return new fields and never mutate shared data.
pub trait Field: Clone + Sized {
    fn grid(&self) -> &Arc<Grid>;
    fn repr(&self) -> Repr;
    /// One buffer per component, each of length `n^3`.
    fn components(&self) -> &[Vec<Complex64>];

    #[doc(hidden)]
    fn components_mut(&mut self) -> &mut [Vec<Complex64>];
    #[doc(hidden)]
    fn set_repr(&mut self, repr: Repr);
    /// Called after every inverse transform.
    #[doc(hidden)]
    fn after_inverse(&mut self) {}

    fn into_spectral(mut self) -> Self {
        if self.repr() == Repr::Spectral {
            return self;
        }
        let grid = self.grid().clone();
        for c in self.components_mut() {
            fft3(&grid, c, Direction::Forward);
        }
        self.set_repr(Repr::Spectral);
        self
    }

    fn into_physical(mut self) -> Self {
        if self.repr() == Repr::Physical {
            return self;
        }
        let grid = self.grid().clone();
        for c in self.components_mut() {
            fft3(&grid, c, Direction::Inverse);
        }
        self.set_repr(Repr::Physical);
        self.after_inverse();
        self
    }

    fn to_spectral(&self) -> Self {
        self.clone().into_spectral()
    }

    fn to_physical(&self) -> Self {
        self.clone().into_physical()
    }

    fn into_repr(self, repr: Repr) -> Self {
        match repr {
            Repr::Physical => self.into_physical(),
            Repr::Spectral => self.into_spectral(),
        }
    }

    /// Multiply every component by a complex constant.
    fn scaled(mut self, c: Complex64) -> Self {
        for comp in self.components_mut() {
            for v in comp.iter_mut() {
                *v *= c;
            }
        }
        self
    }

    /// True if every stored value is finite.
    fn is_finite(&self) -> bool {
        self.components()
            .iter()
            .all(|c| c.iter().all(|v| v.re.is_finite() && v.im.is_finite()))
    }
}

/// Scalar field on a [`Grid`]; `n`, `∂_t n` and `|u|^2` live here.
///
/// Fields built from real samples carry a reality flag; for those, inverse
/// transforms discard the imaginary round-off so physical values stay real.
#[derive(Clone, Debug)]
pub struct ScalarField {
    grid: Arc<Grid>,
    repr: Repr,
    data: [Vec<Complex64>; 1],
    real: bool,
}

impl ScalarField {
    pub fn zeros(grid: &Arc<Grid>) -> Self {
        Self {
            grid: grid.clone(),
            repr: Repr::Physical,
            data: [vec![Complex64::default(); grid.len()]],
            real: true,
        }
    }

    pub fn from_real_fn(grid: &Arc<Grid>, f: impl Fn([f64; 3]) -> f64) -> Self {
        let data = (0..grid.len())
            .map(|idx| Complex64::new(f(grid.position(idx)), 0.0))
            .collect();
        Self {
            grid: grid.clone(),
            repr: Repr::Physical,
            data: [data],
            real: true,
        }
    }

    pub fn from_complex_fn(grid: &Arc<Grid>, f: impl Fn([f64; 3]) -> Complex64) -> Self {
        let data = (0..grid.len()).map(|idx| f(grid.position(idx))).collect();
        Self {
            grid: grid.clone(),
            repr: Repr::Physical,
            data: [data],
            real: false,
        }
    }

    pub fn from_real_values(grid: &Arc<Grid>, values: Vec<f64>) -> Result<Self, SpectralError> {
        check_len(grid, values.len())?;
        Ok(Self {
            grid: grid.clone(),
            repr: Repr::Physical,
            data: [values.into_iter().map(|v| Complex64::new(v, 0.0)).collect()],
            real: true,
        })
    }

    /// Build from stored values in either representation.
    ///
    /// `real` asserts that the physical field is real-valued.
    pub fn from_values(
        grid: &Arc<Grid>,
        repr: Repr,
        values: Vec<Complex64>,
        real: bool,
    ) -> Result<Self, SpectralError> {
        check_len(grid, values.len())?;
        let mut f = Self {
            grid: grid.clone(),
            repr,
            data: [values],
            real,
        };
        if repr == Repr::Physical {
            f.after_inverse();
        }
        Ok(f)
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn values(&self) -> &[Complex64] {
        &self.data[0]
    }

    /// Real parts of the physical samples.
    pub fn real_values(&self) -> Vec<f64> {
        self.to_physical().data[0].iter().map(|v| v.re).collect()
    }

    /// Spatial mean (the zero Fourier mode).
    pub fn mean(&self) -> Complex64 {
        match self.repr {
            Repr::Spectral => self.data[0][0],
            Repr::Physical => self.data[0].iter().sum::<Complex64>() / self.grid.len() as f64,
        }
    }
}

impl Field for ScalarField {
    fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }
    fn repr(&self) -> Repr {
        self.repr
    }
    fn components(&self) -> &[Vec<Complex64>] {
        &self.data
    }
    fn components_mut(&mut self) -> &mut [Vec<Complex64>] {
        &mut self.data
    }
    fn set_repr(&mut self, repr: Repr) {
        self.repr = repr;
    }
    fn after_inverse(&mut self) {
        if self.real {
            for v in self.data[0].iter_mut() {
                v.im = 0.0;
            }
        }
    }
}

/// Complex 3-vector field on a [`Grid`]; houses the envelope `u` and `v = ∂_t u`.
#[derive(Clone, Debug)]
pub struct VectorField {
    grid: Arc<Grid>,
    repr: Repr,
    comps: [Vec<Complex64>; 3],
}

impl VectorField {
    pub fn zeros(grid: &Arc<Grid>) -> Self {
        let z = vec![Complex64::default(); grid.len()];
        Self {
            grid: grid.clone(),
            repr: Repr::Physical,
            comps: [z.clone(), z.clone(), z],
        }
    }

    pub fn from_fn(grid: &Arc<Grid>, f: impl Fn([f64; 3]) -> [Complex64; 3]) -> Self {
        let mut out = Self::zeros(grid);
        for idx in 0..grid.len() {
            let v = f(grid.position(idx));
            for (c, vc) in out.comps.iter_mut().zip(v) {
                c[idx] = vc;
            }
        }
        out
    }

    pub fn from_components(
        grid: &Arc<Grid>,
        repr: Repr,
        comps: [Vec<Complex64>; 3],
    ) -> Result<Self, SpectralError> {
        for c in &comps {
            check_len(grid, c.len())?;
        }
        Ok(Self {
            grid: grid.clone(),
            repr,
            comps,
        })
    }

    pub fn component(&self, axis: usize) -> &[Complex64] {
        &self.comps[axis]
    }

    pub fn into_components(self) -> [Vec<Complex64>; 3] {
        self.comps
    }

    /// Pointwise `|u|^2`, a real physical scalar field.
    pub fn modulus_squared(&self) -> ScalarField {
        let u = self.to_physical();
        let values = (0..self.grid.len())
            .map(|i| u.comps.iter().map(|c| c[i].norm_sqr()).sum())
            .collect();
        ScalarField::from_real_values(&self.grid, values).expect("length matches grid")
    }

    /// Pointwise product `n u` in physical space (no dealiasing).
    pub fn times_scalar(&self, n: &ScalarField) -> VectorField {
        assert_same_grid(&self.grid, n.grid());
        let u = self.to_physical();
        let n = n.to_physical();
        let nv = n.values();
        let comps = u
            .comps
            .map(|c| c.iter().zip(nv).map(|(a, b)| a * b).collect::<Vec<_>>());
        VectorField {
            grid: self.grid.clone(),
            repr: Repr::Physical,
            comps,
        }
    }
}

impl Field for VectorField {
    fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }
    fn repr(&self) -> Repr {
        self.repr
    }
    fn components(&self) -> &[Vec<Complex64>] {
        &self.comps
    }
    fn components_mut(&mut self) -> &mut [Vec<Complex64>] {
        &mut self.comps
    }
    fn set_repr(&mut self, repr: Repr) {
        self.repr = repr;
    }
}

fn check_len(grid: &Grid, len: usize) -> Result<(), SpectralError> {
    if len != grid.len() {
        return Err(SpectralError::LengthMismatch {
            expected: grid.len(),
            found: len,
        });
    }
    Ok(())
}

pub(crate) fn assert_same_grid(a: &Grid, b: &Grid) {
    assert!(
        a.same_as(b),
        "fields live on different grids: {a:?} vs {b:?}"
    );
}

fn zip_with<F: Field>(a: &F, b: &F, op: impl Fn(Complex64, Complex64) -> Complex64) -> F {
    assert_same_grid(a.grid(), b.grid());
    let b = b.clone().into_repr(a.repr());
    let mut out = a.clone();
    for (oc, bc) in out.components_mut().iter_mut().zip(b.components()) {
        for (o, &x) in oc.iter_mut().zip(bc) {
            *o = op(*o, x);
        }
    }
    out
}

macro_rules! impl_field_arith {
    ($t:ty) => {
        impl Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                zip_with(self, rhs, |a, b| a + b)
            }
        }
        impl Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                zip_with(self, rhs, |a, b| a - b)
            }
        }
    };
}

impl_field_arith!(VectorField);

impl Add for &ScalarField {
    type Output = ScalarField;
    fn add(self, rhs: &ScalarField) -> ScalarField {
        let mut out = zip_with(self, rhs, |a, b| a + b);
        out.real = self.real && rhs.real;
        out
    }
}

impl Sub for &ScalarField {
    type Output = ScalarField;
    fn sub(self, rhs: &ScalarField) -> ScalarField {
        let mut out = zip_with(self, rhs, |a, b| a - b);
        out.real = self.real && rhs.real;
        out
    }
}
