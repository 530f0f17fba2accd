//! Seeded band-limited initial data.

use std::sync::Arc;

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::LabError;
use crate::operators::{project_p, project_q, Alpha};
use crate::solver::SystemState;
use crate::spectral::{sobolev_norm, Field, Grid, Repr, ScalarField, VectorField};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DataKind {
    WellPrepared,
    IllPrepared,
}

impl DataKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DataKind::WellPrepared => "well_prepared",
            DataKind::IllPrepared => "ill_prepared",
        }
    }
}

impl std::str::FromStr for DataKind {
    type Err = LabError;
    fn from_str(s: &str) -> Result<Self, LabError> {
        match s {
            "well_prepared" => Ok(DataKind::WellPrepared),
            "ill_prepared" => Ok(DataKind::IllPrepared),
            _ => Err(LabError::InvalidRecipe(format!("unknown data kind {s:?}"))),
        }
    }
}

/// How to draw `(u₀, n₀, n₁)`.
///
/// `u₀ = Qg + s·Pw` with `g, w` random fields supported on `0 < |m| ≤ n_modes`.
/// `Qg` is scaled to `‖Qg‖_{H²} = amplitude`, and `n₀`, `n₁` to
/// `‖n₀‖_{H¹} = ‖n₁‖_{L²} = amplitude`. The solenoidal part has
/// `‖s·Pw‖_{H²} = eps_solenoidal`, divided by `α` for well-prepared data with
/// `alpha_coupling`, and zero for well-prepared data without it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DataRecipe {
    pub seed: u64,
    pub kind: DataKind,
    pub n_modes: usize,
    pub eps_solenoidal: f64,
    pub alpha_coupling: bool,
    pub amplitude: f64,
}

impl Default for DataRecipe {
    fn default() -> Self {
        Self {
            seed: 42,
            kind: DataKind::WellPrepared,
            n_modes: 2,
            eps_solenoidal: 5.0,
            alpha_coupling: true,
            amplitude: 20.0,
        }
    }
}

impl DataRecipe {
    pub fn validate(&self, grid: &Grid) -> Result<(), LabError> {
        let bad = |m: String| Err(LabError::InvalidRecipe(m));
        if self.n_modes == 0 || self.n_modes >= grid.n() / 2 {
            return bad(format!(
                "n_modes must be in 1..{} for a {}^3 grid, got {}",
                grid.n() / 2,
                grid.n(),
                self.n_modes
            ));
        }
        if !(self.eps_solenoidal >= 0.0 && self.eps_solenoidal.is_finite()) {
            return bad(format!(
                "eps_solenoidal must be >= 0, got {}",
                self.eps_solenoidal
            ));
        }
        if !(self.amplitude >= 0.0 && self.amplitude.is_finite()) {
            return bad(format!("amplitude must be >= 0, got {}", self.amplitude));
        }
        Ok(())
    }

    /// Size `‖P u₀^α‖_{H²}` of the solenoidal part for this recipe.
    pub fn solenoidal_size(&self, alpha: Alpha) -> f64 {
        match (self.kind, alpha) {
            (_, Alpha::Infinite) => 0.0,
            (DataKind::IllPrepared, _) => self.eps_solenoidal,
            (DataKind::WellPrepared, Alpha::Finite(a)) if self.alpha_coupling => {
                self.eps_solenoidal / a.get()
            }
            (DataKind::WellPrepared, Alpha::Finite(_)) => 0.0,
        }
    }
}

/// The four seeded ingredients, drawn in a fixed order.
struct Ingredients {
    q_part: VectorField,
    p_part: VectorField,
    n0: ScalarField,
    n1: ScalarField,
}

fn in_band(grid: &Grid, idx: usize, n_modes: usize) -> bool {
    let m = grid.mode(idx);
    let r2 = m.iter().map(|x| x * x).sum::<i64>();
    r2 > 0 && r2 <= (n_modes * n_modes) as i64 && !grid.is_nyquist(idx)
}

fn random_vector(grid: &Arc<Grid>, n_modes: usize, rng: &mut ChaCha8Rng) -> VectorField {
    let mut comps = [0, 1, 2].map(|_| vec![Complex64::default(); grid.len()]);
    for idx in 0..grid.len() {
        if !in_band(grid, idx, n_modes) {
            continue;
        }
        for c in comps.iter_mut() {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            c[idx] = Complex64::new(re, im);
        }
    }
    VectorField::from_components(grid, Repr::Spectral, comps).expect("length matches grid")
}

fn random_real(grid: &Arc<Grid>, n_modes: usize, rng: &mut ChaCha8Rng) -> ScalarField {
    let mut vals = vec![Complex64::default(); grid.len()];
    for idx in 0..grid.len() {
        if !in_band(grid, idx, n_modes) {
            continue;
        }
        let m = grid.mode(idx);
        let partner = grid.mode_to_index([-m[0], -m[1], -m[2]]);
        if partner < idx {
            continue;
        }
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        vals[idx] = Complex64::new(re, im);
        vals[partner] = vals[idx].conj();
    }
    ScalarField::from_values(grid, Repr::Spectral, vals, true).expect("length matches grid")
}

fn normalized<F: Field>(f: F, s: f64, target: f64) -> F {
    let norm = sobolev_norm(&f, s);
    if norm == 0.0 {
        return f;
    }
    f.scaled(Complex64::new(target / norm, 0.0))
}

fn ingredients(recipe: &DataRecipe, grid: &Arc<Grid>) -> Ingredients {
    let mut rng = ChaCha8Rng::seed_from_u64(recipe.seed);
    let g = random_vector(grid, recipe.n_modes, &mut rng);
    let w = random_vector(grid, recipe.n_modes, &mut rng);
    let n0 = random_real(grid, recipe.n_modes, &mut rng);
    let n1 = random_real(grid, recipe.n_modes, &mut rng);
    Ingredients {
        q_part: normalized(project_q(&g), 2.0, recipe.amplitude),
        p_part: normalized(project_p(&w), 2.0, 1.0),
        n0: normalized(n0, 1.0, recipe.amplitude),
        n1: normalized(n1, 0.0, recipe.amplitude),
    }
}

fn assemble(recipe: &DataRecipe, grid: &Arc<Grid>, alpha: Alpha) -> SystemState {
    let ing = ingredients(recipe, grid);
    let s = recipe.solenoidal_size(alpha);
    let u = if s == 0.0 {
        ing.q_part
    } else {
        &ing.q_part + &ing.p_part.scaled(Complex64::new(s, 0.0))
    };
    SystemState::new(
        u.into_physical(),
        ing.n0.into_physical(),
        ing.n1.into_physical(),
        0.0,
    )
    .expect("generated fields share a grid")
}

/// Well-prepared data for the full system at `α`, or the limit datum
/// `u₀^∞ = Qg` for `α = ∞`.
pub fn gen_well_prepared(
    recipe: &DataRecipe,
    grid: &Arc<Grid>,
    alpha: Alpha,
) -> Result<SystemState, LabError> {
    recipe.validate(grid)?;
    if recipe.kind != DataKind::WellPrepared {
        return Err(LabError::InvalidRecipe(
            "gen_well_prepared needs kind = well_prepared".into(),
        ));
    }
    Ok(assemble(recipe, grid, alpha))
}

/// Ill-prepared data: `‖P u₀‖_{H²} = eps_solenoidal` for every `α`.
pub fn gen_ill_prepared(recipe: &DataRecipe, grid: &Arc<Grid>) -> Result<SystemState, LabError> {
    recipe.validate(grid)?;
    if recipe.kind != DataKind::IllPrepared {
        return Err(LabError::InvalidRecipe(
            "gen_ill_prepared needs kind = ill_prepared".into(),
        ));
    }
    Ok(assemble(
        recipe,
        grid,
        Alpha::finite(1.0).expect("1 is a valid alpha"),
    ))
}

/// Data for either kind at `α`; for `α = ∞` the irrotational limit datum.
pub fn gen_data(
    recipe: &DataRecipe,
    grid: &Arc<Grid>,
    alpha: Alpha,
) -> Result<SystemState, LabError> {
    recipe.validate(grid)?;
    Ok(assemble(recipe, grid, alpha))
}

/// `(‖u₀‖_{H²}, ‖n₀‖_{H¹}, ‖n₁‖_{L²})`.
pub fn data_norms(s: &SystemState) -> (f64, f64, f64) {
    (
        sobolev_norm(&s.u, 2.0),
        sobolev_norm(&s.n, 1.0),
        sobolev_norm(&s.nt, 0.0),
    )
}
