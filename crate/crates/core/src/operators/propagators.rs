//! Linear Schrödinger-type groups as Fourier multipliers.

use num_complex::Complex64;

use super::{Alpha, AlphaParam, ProjectionSymbol};
use crate::spectral::{apply_multiplier, Field, VectorField};

/// `U(t) = e^{itΔ}`: multiplies each coefficient by `e^{-it|k|^2}`.
pub fn apply_schrodinger<F: Field>(f: &F, t: f64) -> F {
    if t == 0.0 {
        return f.clone();
    }
    let grid = f.grid().clone();
    apply_multiplier(f, |idx| {
        Complex64::from_polar(1.0, -t * grid.k_squared(idx))
    })
}

/// `U_Z(t) = U(αt)P + U(t)Q`, the flow of `i∂_t u = α∇×∇×u − ∇div u`.
pub fn apply_uz(f: &VectorField, t: f64, alpha: AlphaParam) -> VectorField {
    apply_uz_with(&ProjectionSymbol::default(), f, t, alpha)
}

pub fn apply_uz_with(
    symbol: &ProjectionSymbol,
    f: &VectorField,
    t: f64,
    alpha: AlphaParam,
) -> VectorField {
    if t == 0.0 {
        return f.clone();
    }
    let a = alpha.get();
    let grid = f.grid().clone();
    symbol.map_modes_indexed(f, |idx, q, p| {
        let k2 = grid.k_squared(idx);
        let slow = Complex64::from_polar(1.0, -t * k2);
        let fast = Complex64::from_polar(1.0, -a * t * k2);
        [0, 1, 2].map(|c| slow * q[c] + fast * p[c])
    })
}

/// The linear part `L_α u = α∇×∇×u − ∇div u`, applied as the single symbol
/// `|k|^2 (α P̂ + Q̂)`. For the limit system this is `-Δu`.
pub fn linear_operator(u: &VectorField, alpha: Alpha) -> VectorField {
    let grid = u.grid().clone();
    match alpha {
        Alpha::Finite(a) => {
            let a = a.get();
            ProjectionSymbol::default().map_modes_indexed(u, |idx, q, p| {
                let k2 = grid.k_squared(idx);
                [0, 1, 2].map(|c| k2 * (a * p[c] + q[c]))
            })
        }
        Alpha::Infinite => apply_multiplier(u, |idx| Complex64::new(grid.k_squared(idx), 0.0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral::{sobolev_norm, Grid, ScalarField};
    use std::f64::consts::PI;

    fn plane_wave(grid: &std::sync::Arc<Grid>, pol: [f64; 3]) -> VectorField {
        VectorField::from_fn(grid, |x| {
            let e = Complex64::from_polar(1.0, 2.0 * PI * x[0]);
            pol.map(|p| e * p)
        })
    }

    fn rel(a: &VectorField, b: &VectorField) -> f64 {
        sobolev_norm(&(a - b), 0.0) / sobolev_norm(b, 0.0)
    }

    #[test]
    fn schrodinger_single_mode_phase() {
        let g = Grid::new(8, 1.0).unwrap();
        let f = ScalarField::from_complex_fn(&g, |x| Complex64::from_polar(1.0, 2.0 * PI * x[0]));
        let out = apply_schrodinger(&f, 0.5);
        let phase = Complex64::from_polar(1.0, -4.0 * PI * PI * 0.5);
        let expect = f.clone().scaled(phase);
        let d = &out - &expect;
        assert!(sobolev_norm(&d, 0.0) < 1e-13);
        assert_eq!(apply_schrodinger(&f, 0.0).values(), f.values());
    }

    #[test]
    fn uz_plane_waves() {
        let g = Grid::new(8, 1.0).unwrap();
        let irr = plane_wave(&g, [1.0, 0.0, 0.0]);
        for alpha in [1.0, 3.0, 40.0] {
            let a = AlphaParam::new(alpha).unwrap();
            let out = apply_uz(&irr, 0.3, a);
            let expect = irr
                .clone()
                .scaled(Complex64::from_polar(1.0, -0.3 * 4.0 * PI * PI));
            assert!(rel(&out, &expect) < 1e-13);
        }
        let sol = plane_wave(&g, [0.0, 1.0, 0.0]);
        let out = apply_uz(&sol, 0.25, AlphaParam::new(4.0).unwrap());
        let expect = sol
            .clone()
            .scaled(Complex64::from_polar(1.0, -4.0 * PI * PI));
        assert!(rel(&out, &expect) < 1e-12);
    }

    #[test]
    fn linear_operator_on_irrotational_wave() {
        let g = Grid::new(8, 1.0).unwrap();
        let u = plane_wave(&g, [1.0, 0.0, 0.0]);
        let lu = linear_operator(&u, Alpha::finite(7.0).unwrap());
        let expect = u.clone().scaled(Complex64::new(4.0 * PI * PI, 0.0));
        assert!(rel(&lu, &expect) < 1e-13);
    }

    /// Single-mode oracle: `a' = -i M a` with
    /// `M = α(|k|^2 I - k k^T) + k k^T`, integrated by classical RK4.
    fn rk4_mode(
        k: [f64; 3],
        a0: [Complex64; 3],
        alpha: f64,
        t: f64,
        steps: usize,
    ) -> [Complex64; 3] {
        let k2: f64 = k.iter().map(|x| x * x).sum();
        let rhs = |a: [Complex64; 3]| {
            let kdota = k[0] * a[0] + k[1] * a[1] + k[2] * a[2];
            [0, 1, 2].map(|c| {
                let m = alpha * (a[c] * k2 - kdota * k[c]) + kdota * k[c];
                Complex64::new(0.0, -1.0) * m
            })
        };
        let h = t / steps as f64;
        let mut a = a0;
        for _ in 0..steps {
            let add =
                |x: [Complex64; 3], y: [Complex64; 3], s: f64| [0, 1, 2].map(|c| x[c] + y[c] * s);
            let k1 = rhs(a);
            let k2v = rhs(add(a, k1, h / 2.0));
            let k3 = rhs(add(a, k2v, h / 2.0));
            let k4 = rhs(add(a, k3, h));
            a = [0, 1, 2].map(|c| a[c] + (k1[c] + k2v[c] * 2.0 + k3[c] * 2.0 + k4[c]) * (h / 6.0));
        }
        a
    }

    #[test]
    fn uz_matches_mode_ode() {
        let g = Grid::new(8, 2.0 * PI).unwrap();
        let a0 = [
            Complex64::new(0.3, -0.2),
            Complex64::new(1.0, 0.5),
            Complex64::new(-0.7, 0.1),
        ];
        for m in [[1i64, 0, 0], [1, 2, -1], [0, -3, 2]] {
            let idx = g.mode_to_index(m);
            let k = g.wavenumber(idx);
            let u = VectorField::from_fn(&g, |x| {
                let e = Complex64::from_polar(1.0, k[0] * x[0] + k[1] * x[1] + k[2] * x[2]);
                a0.map(|c| c * e)
            });
            let (alpha, t) = (5.0, 0.2);
            let out = apply_uz(&u, t, AlphaParam::new(alpha).unwrap());
            let want = rk4_mode(k, a0, alpha, t, 4000);
            for (c, w) in want.iter().enumerate() {
                assert!((out.component(c)[idx] - w).norm() < 1e-9, "mode {m:?}");
            }
        }
    }

    fn arb_field(g: &std::sync::Arc<Grid>, vals: &[f64]) -> VectorField {
        let len = g.len();
        let comps = [0, 1, 2].map(|c| {
            (0..len)
                .map(|i| {
                    Complex64::new(
                        vals[(2 * (c * len + i)) % vals.len()],
                        vals[(2 * (c * len + i) + 1) % vals.len()],
                    )
                })
                .collect::<Vec<_>>()
        });
        VectorField::from_components(g, crate::spectral::Repr::Physical, comps).unwrap()
    }

    proptest::proptest! {
        #![proptest_config(proptest::prelude::ProptestConfig::with_cases(16))]

        #[test]
        fn uz_group_isometry_and_commutation(
            vals in proptest::collection::vec(-1.0f64..1.0, 384),
            s in -2.0f64..2.0,
            t in -2.0f64..2.0,
            alpha in 1.0f64..50.0,
        ) {
            let g = Grid::new(4, 2.0 * PI).unwrap();
            let f = arb_field(&g, &vals);
            let a = AlphaParam::new(alpha).unwrap();
            let scale = sobolev_norm(&f, 0.0).max(1e-300);
            let st = apply_uz(&apply_uz(&f, s, a), t, a);
            let direct = apply_uz(&f, s + t, a);
            proptest::prop_assert!(sobolev_norm(&(&st - &direct), 0.0) <= 1e-12 * scale);
            proptest::prop_assert!((sobolev_norm(&direct, 0.0) - scale).abs() <= 1e-12 * scale);
            for r in [-1.0, 1.5] {
                proptest::prop_assert!((sobolev_norm(&apply_uz(&f, s, a), r) - sobolev_norm(&f, r)).abs()
                    <= 1e-12 * sobolev_norm(&f, r).max(1e-300));
            }
            let sym = ProjectionSymbol::default();
            let pq = sym.project_p(&apply_uz(&f, t, a));
            let qp = apply_uz(&sym.project_p(&f), t, a);
            proptest::prop_assert!(sobolev_norm(&(&pq - &qp), 0.0) <= 1e-12 * scale);
            let back = apply_uz(&direct, -(s + t), a);
            proptest::prop_assert!(sobolev_norm(&(&back - &f), 0.0) <= 1e-12 * scale);
        }
    }
}
