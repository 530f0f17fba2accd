use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::operators::{apply_schrodinger, project_p, Alpha, AlphaParam};
use crate::solver::{run, Sample, SolverParams, SystemState, Trajectory};
use crate::spectral::{sobolev_norm, Grid, ScalarField, VectorField};

fn zero_state(g: &Arc<Grid>, u: VectorField, t: f64) -> SystemState {
    SystemState::new(u, ScalarField::zeros(g), ScalarField::zeros(g), t).unwrap()
}

fn traj(alpha: Alpha, states: Vec<SystemState>) -> Trajectory {
    let samples = states
        .into_iter()
        .map(|state| Sample {
            state,
            diagnostics: crate::solver::Diagnostics {
                mass: 0.0,
                hamiltonian: None,
                residual: None,
            },
        })
        .collect();
    Trajectory {
        params: SolverParams::new(alpha, 0.1, 0.2, Some(1)).unwrap(),
        samples,
    }
}

fn wavy(g: &Arc<Grid>, t: f64) -> VectorField {
    VectorField::from_fn(g, |x| {
        let e = Complex64::from_polar(1.0, 2.0 * PI * (x[0] + x[1]) + t);
        [e, Complex64::new(0.1, t), e * 0.5]
    })
}

#[test]
fn identical_trajectories_have_zero_error() {
    let g = Grid::new(8, 1.0).unwrap();
    let a = Alpha::finite(2.0).unwrap();
    let states: Vec<_> = [0.0, 0.1, 0.2]
        .iter()
        .map(|&t| zero_state(&g, wavy(&g, t), t))
        .collect();
    let e = error_norms(&traj(a, states.clone()), &traj(a, states)).unwrap();
    assert_eq!(e, ErrorNorms::default());
}

#[test]
fn constant_offset() {
    let g = Grid::new(8, 1.0).unwrap();
    let a = Alpha::finite(2.0).unwrap();
    let c = [
        Complex64::new(0.3, 0.4),
        Complex64::new(0.0, 1.2),
        Complex64::new(0.0, 0.0),
    ];
    let cnorm = (0.25f64 + 1.44).sqrt();
    let times = [0.0, 0.1, 0.2];
    let base: Vec<_> = times
        .iter()
        .map(|&t| zero_state(&g, wavy(&g, t), t))
        .collect();
    let shifted: Vec<_> = times
        .iter()
        .map(|&t| {
            let off = VectorField::from_fn(&g, |_| c);
            zero_state(&g, &wavy(&g, t) + &off, t)
        })
        .collect();
    let e = error_norms(&traj(a, base), &traj(a, shifted)).unwrap();
    assert!((e.u_linf_h2 - cnorm).abs() < 1e-12);
    assert!((e.u_l2_w26 - cnorm * 0.2f64.sqrt()).abs() < 1e-12);
    assert!(e.n_w1 == 0.0 && e.v_l2_l6 < 1e-12);
}

#[test]
fn two_phase_plane_wave() {
    // k = (1, 1, 0) on L = 2π: longitudinal part a_q ∥ k, transverse part a_p ⟂ k.
    let length = 2.0 * PI;
    let g = Grid::new(8, length).unwrap();
    let (aq, ap) = (0.7, 0.4);
    let s = 0.5f64.sqrt();
    let u0 = VectorField::from_fn(&g, |x| {
        let e = Complex64::from_polar(1.0, x[0] + x[1]);
        [
            e * (aq * s + ap * s),
            e * (aq * s - ap * s),
            Complex64::default(),
        ]
    });
    let init = zero_state(&g, u0, 0.0);
    let alpha = 9.0;
    let (dt, t_final) = (0.01, 0.3);
    let pa = SolverParams::new(Alpha::finite(alpha).unwrap(), dt, t_final, Some(3)).unwrap();
    let pi = SolverParams {
        alpha: Alpha::Infinite,
        ..pa
    };
    let e = error_norms(&run(&init, &pa).unwrap(), &run(&init, &pi).unwrap()).unwrap();

    let k2: f64 = 2.0;
    let vol = length.powi(3);
    assert!((e.u_linf_h2 - ap * (1.0 + k2) * vol.sqrt()).abs() < 1e-10);
    let w26 = ap * vol.powf(1.0 / 6.0) * (1.0 + k2.sqrt() + k2);
    assert!((e.u_l2_w26 - w26 * t_final.sqrt()).abs() < 1e-10);
    assert!(e.n_w1 < 1e-10);
    let v = alpha * k2 * ap * vol.powf(1.0 / 6.0);
    assert!((e.v_l2_l6 - v * t_final.sqrt()).abs() < 1e-9);
}

#[test]
fn mismatched_sampling_is_rejected() {
    let g = Grid::new(4, 1.0).unwrap();
    let a = Alpha::finite(2.0).unwrap();
    let two: Vec<_> = [0.0, 0.1]
        .iter()
        .map(|&t| zero_state(&g, wavy(&g, t), t))
        .collect();
    let three: Vec<_> = [0.0, 0.1, 0.2]
        .iter()
        .map(|&t| zero_state(&g, wavy(&g, t), t))
        .collect();
    assert!(error_norms(&traj(a, two.clone()), &traj(a, three)).is_err());
    let late: Vec<_> = [0.0, 0.15]
        .iter()
        .map(|&t| zero_state(&g, wavy(&g, t), t))
        .collect();
    assert!(error_norms(&traj(a, two), &traj(a, late)).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn error_norms_are_symmetric(seed in 0u64..1000, alpha in 1.0f64..20.0) {
        let g = Grid::new(8, 2.0 * PI).unwrap();
        let recipe = DataRecipe { seed, n_modes: 1, amplitude: 2.0, ..Default::default() };
        let p = SolverParams::new(Alpha::finite(alpha).unwrap(), 0.02, 0.1, Some(2)).unwrap();
        let pi = SolverParams { alpha: Alpha::Infinite, ..p };
        let a = run(&gen_well_prepared(&recipe, &g, p.alpha).unwrap(), &p).unwrap();
        let b = run(&gen_well_prepared(&recipe, &g, Alpha::Infinite).unwrap(), &pi).unwrap();
        let ab = error_norms(&a, &b).unwrap();
        let ba = error_norms(&b, &a).unwrap();
        for (x, y) in [(ab.u_linf_h2, ba.u_linf_h2), (ab.u_l2_w26, ba.u_l2_w26), (ab.n_w1, ba.n_w1), (ab.v_l2_l6, ba.v_l2_l6)] {
            prop_assert!((x - y).abs() <= 1e-12 * x.max(1e-300));
            prop_assert!(x.is_finite() && x >= 0.0);
        }
    }
}

#[test]
fn irrotational_linear_data_make_systems_coincide() {
    let g = Grid::new(8, 2.0 * PI).unwrap();
    let u0 = VectorField::from_fn(&g, |x| {
        let e = Complex64::from_polar(1.0, x[0] - 2.0 * x[2]);
        [e, Complex64::default(), e * -2.0]
    });
    let init = zero_state(&g, u0, 0.0);
    let p = SolverParams::new(Alpha::Infinite, 0.01, 0.2, Some(5)).unwrap();
    let reference = Reference::compute(&init, &p).unwrap();
    let rec = sweep_one(&init, AlphaParam::new(1.0).unwrap(), &p, &reference).unwrap();
    assert!(rec.err_total() < 1e-10, "{:?}", rec.errors);
}

#[test]
fn small_sweep_is_deterministic_and_ordered() {
    let g = Grid::new(8, 2.0 * PI).unwrap();
    let recipe = DataRecipe {
        n_modes: 1,
        amplitude: 2.0,
        ..Default::default()
    };
    let p = SolverParams::new(Alpha::Infinite, 0.02, 0.2, Some(2)).unwrap();
    let alphas = [1.0, 4.0, 16.0];
    let a = alpha_sweep(&recipe, &g, &p, &alphas).unwrap();
    let b = alpha_sweep(&recipe, &g, &p, &alphas).unwrap();
    assert_eq!(a.iter().map(|r| r.alpha).collect::<Vec<_>>(), alphas);
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.errors, y.errors);
        assert!(x.diverged_at.is_none() && x.err_total().is_finite());
    }
    assert!(alpha_sweep(&recipe, &g, &p, &[4.0, 2.0]).is_err());
    assert!(alpha_sweep(&recipe, &g, &p, &[0.5, 2.0]).is_err());
}

#[test]
fn cross_check_changes_little() {
    let g = Grid::new(8, 2.0 * PI).unwrap();
    let recipe = DataRecipe {
        n_modes: 1,
        amplitude: 2.0,
        ..Default::default()
    };
    let p = SolverParams::new(Alpha::Infinite, 0.02, 0.2, Some(2)).unwrap();
    let c = cross_check(&recipe, &g, &p, 4.0).unwrap();
    assert!(c.relative_change() < 0.05, "{c:?}");
}

#[test]
fn admissible_pairs() {
    assert!(StrichartzPair::new(f64::INFINITY, 2.0).is_ok());
    assert!(StrichartzPair::new(2.0, 6.0).is_ok());
    assert!(StrichartzPair::new(4.0, 3.0).is_ok());
    assert!(StrichartzPair::new(2.0, 4.0).is_err());
    assert!(StrichartzPair::new(1.0, 8.0).is_err());
    assert_eq!(
        StrichartzPair::endpoint(),
        StrichartzPair::new(2.0, 6.0).unwrap()
    );
}

fn band_limited(g: &Arc<Grid>) -> VectorField {
    let recipe = DataRecipe {
        kind: DataKind::IllPrepared,
        n_modes: 2,
        ..Default::default()
    };
    gen_ill_prepared(&recipe, g).unwrap().u
}

#[test]
fn energy_pair_is_flat() {
    let g = Grid::new(8, 2.0 * PI).unwrap();
    let f = band_limited(&g);
    let rep = strichartz_decay(&f, &[1.0, 2.0, 4.0], StrichartzPair::energy(), 0.1).unwrap();
    let pf = sobolev_norm(&project_p(&f), 0.0);
    for r in &rep.records {
        assert!((r.norm - pf).abs() < 1e-12 * pf);
    }
    assert!(rep.fit.unwrap().slope.abs() < 1e-12);
    assert!((rep.wrap_time - PI).abs() < 1e-14);
}

#[test]
fn irrotational_input_gives_zero() {
    let g = Grid::new(8, 2.0 * PI).unwrap();
    let f = crate::operators::project_q(&band_limited(&g));
    let rep = strichartz_decay(&f, &[1.0, 2.0], StrichartzPair::endpoint(), 0.1).unwrap();
    assert!(rep.records.iter().all(|r| r.norm < 1e-12));
    assert!(rep.fit.is_none());
}

/// `‖U(αt)f‖_{L^q(0,T)} = α^{-1/q} ‖U(s)f‖_{L^q(0,αT)}` holds exactly,
/// including for the trapezoid rule on matching grids.
#[test]
fn time_rescaling_identity() {
    let g = Grid::new(8, 2.0 * PI).unwrap();
    let pf = project_p(&band_limited(&g));
    let (alpha, horizon, q, steps) = (8.0, 0.05, 2.0, 400);
    let norm = |scale: f64, t_end: f64| {
        let samples: Vec<(f64, f64)> = (0..=steps)
            .map(|j| {
                let t = t_end * j as f64 / steps as f64;
                (
                    t,
                    crate::spectral::lebesgue_norm(&apply_schrodinger(&pf, scale * t), 6.0),
                )
            })
            .collect();
        crate::spectral::strichartz_norm(&samples, q).unwrap()
    };
    let fast = norm(alpha, horizon);
    let slow = norm(1.0, alpha * horizon);
    assert!((fast - alpha.powf(-1.0 / q) * slow).abs() < 1e-12 * fast);
}

#[test]
fn layer_demo_basics() {
    let g = Grid::new(8, 2.0 * PI).unwrap();
    let p = SolverParams::new(Alpha::Infinite, 0.02, 0.2, Some(2)).unwrap();
    let recipe = DataRecipe {
        kind: DataKind::IllPrepared,
        n_modes: 1,
        amplitude: 2.0,
        eps_solenoidal: 1.0,
        ..Default::default()
    };
    let recs = initial_layer_demo(&recipe, &g, &p, &[1.0, 8.0, 32.0]).unwrap();
    for r in &recs {
        assert!(r.unshifted_linf_l2 >= 0.5 * r.layer_l2);
    }
    let none = DataRecipe {
        eps_solenoidal: 0.0,
        ..recipe
    };
    let recs = initial_layer_demo(&none, &g, &p, &[1.0, 8.0]).unwrap();
    assert!(recs.iter().all(|r| r.layer_l2 == 0.0));
    assert!(recs[1].unshifted_linf_l2 <= recs[0].unshifted_linf_l2);
    let well = DataRecipe {
        kind: DataKind::WellPrepared,
        ..recipe
    };
    assert!(initial_layer_demo(&well, &g, &p, &[1.0]).is_err());
}
