//! Quick invariant checks at 8³/16³ for `zak verify`.

use std::f64::consts::PI;
use std::io::Write;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zakharov::limitlab::{error_norms, fit_loglog};
use zakharov::operators::{apply_uz, wave_forced_frozen, wave_homogeneous, Mat3, ProjectionSymbol};
use zakharov::solver::{hamiltonian, mass, run, SolverParams, SystemState};
use zakharov::spectral::{curl, divergence, sobolev_norm, Field, Repr};
use zakharov::{Alpha, AlphaParam, Grid, ScalarField, VectorField};

use crate::config::{parse_config, RunConfig};
use crate::snapshot::FieldSnapshot;

/// Deliberate misconfigurations that `verify` must catch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Both zero-mode blocks set to the identity, so `P̂(0) + Q̂(0) = 2`.
    ZeroMode,
}

impl std::str::FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "zero-mode" => Ok(Fault::ZeroMode),
            _ => Err(format!("unknown fault `{s}` (expected zero-mode)")),
        }
    }
}

type Check = Result<(), String>;
type Group = (&'static str, Box<dyn Fn() -> Check>);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn random_field(g: &Arc<Grid>, rng: &mut ChaCha8Rng) -> VectorField {
    let comps = [0, 1, 2].map(|_| {
        (0..g.len())
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect::<Vec<_>>()
    });
    VectorField::from_components(g, Repr::Physical, comps).expect("buffer sizes match the grid")
}

fn l2(f: &impl Field) -> f64 {
    sobolev_norm(f, 0.0)
}

fn projection_algebra(sym: &ProjectionSymbol) -> Check {
    let g = Grid::new(16, 2.0 * PI).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for trial in 0..10 {
        let f = random_field(&g, &mut rng);
        let tol = 1e-12 * sobolev_norm(&f, 2.0);
        let q = sym.project_q(&f);
        let p = sym.project_p(&f);
        let checks = [
            ("Q^2 = Q", l2(&(&sym.project_q(&q) - &q))),
            ("PQ = 0", l2(&sym.project_p(&q))),
            ("P + Q = 1", l2(&(&(&p + &q) - &f.to_spectral()))),
            ("div P = 0", l2(&divergence(&p))),
            ("curl Q = 0", l2(&curl(&q))),
        ];
        for (name, err) in checks {
            ensure(err <= tol, || {
                format!("field {trial}: {name} violated by {err:.3e}")
            })?;
        }
    }
    Ok(())
}

fn plane_wave(g: &Arc<Grid>, pol: [f64; 3]) -> VectorField {
    VectorField::from_fn(g, |x| {
        let e = Complex64::from_polar(1.0, x[0]);
        pol.map(|p| e * p)
    })
}

fn propagators() -> Check {
    let g = Grid::new(8, 2.0 * PI).map_err(|e| e.to_string())?;
    for alpha in [1.0, 10.0, 100.0] {
        let a = AlphaParam::new(alpha).map_err(|e| e.to_string())?;
        for t in [0.1, 1.0] {
            for (pol, speed) in [([1.0, 0.0, 0.0], 1.0), ([0.0, 1.0, 0.0], alpha)] {
                let u = plane_wave(&g, pol);
                let want = u.clone().scaled(Complex64::from_polar(1.0, -speed * t));
                let err = l2(&(&apply_uz(&u, t, a) - &want)) / l2(&want);
                ensure(err <= 1e-12, || {
                    format!("plane wave alpha={alpha} t={t}: {err:.3e}")
                })?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = random_field(&g, &mut rng);
    let a = AlphaParam::new(7.0).map_err(|e| e.to_string())?;
    let scale = l2(&f);
    let law = l2(&(&apply_uz(&apply_uz(&f, 0.3, a), 0.4, a) - &apply_uz(&f, 0.7, a)));
    ensure(law <= 1e-12 * scale, || {
        format!("group law violated by {law:.3e}")
    })?;
    let iso = (l2(&apply_uz(&f, 0.9, a)) - scale).abs();
    ensure(iso <= 1e-12 * scale, || {
        format!("isometry violated by {iso:.3e}")
    })
}

fn wave() -> Check {
    let g = Grid::new(8, 2.0 * PI).map_err(|e| e.to_string())?;
    let n0 = ScalarField::from_real_fn(&g, |x| (2.0 * x[1]).cos());
    let zero = ScalarField::zeros(&g);
    for t in [0.3, 1.7] {
        let (n, _) = wave_homogeneous(&n0, &zero, t);
        let want = ScalarField::from_real_fn(&g, |x| (2.0 * t).cos() * (2.0 * x[1]).cos());
        let err = l2(&(&n - &want));
        ensure(err < 1e-12, || format!("single mode t={t}: {err:.3e}"))?;
    }
    let c = ScalarField::from_real_fn(&g, |_| 0.5);
    let (n, _) = wave_homogeneous(&zero, &c, 2.0);
    let want = ScalarField::from_real_fn(&g, |_| 1.0);
    ensure(l2(&(&n - &want)) < 1e-12, || {
        "zero mode does not grow linearly".into()
    })?;
    let (n, nt) = wave_forced_frozen(
        &n0.clone().scaled(Complex64::new(-1.0, 0.0)),
        &zero,
        &n0,
        0.8,
    );
    let err = l2(&(&n + &n0)) + l2(&nt);
    ensure(err < 1e-12, || {
        format!("forced equilibrium moved by {err:.3e}")
    })
}

fn smooth_state(g: &Arc<Grid>) -> Result<SystemState, String> {
    let u = VectorField::from_fn(g, |x| {
        [
            Complex64::new(x[1].sin(), x[2].cos()),
            Complex64::new(0.5 * x[0].cos(), 0.0),
            Complex64::new(0.0, (x[0] + x[1]).sin()),
        ]
    });
    let n = ScalarField::from_real_fn(g, |x| 0.3 * (x[0] - x[2]).cos());
    let nt = ScalarField::from_real_fn(g, |x| 0.2 * x[1].sin());
    SystemState::new(u, n, nt, 0.0).map_err(|e| e.to_string())
}

fn solver() -> Check {
    let g = Grid::new(8, 2.0 * PI).map_err(|e| e.to_string())?;
    let s0 = smooth_state(&g)?;
    for alpha in [
        Alpha::finite(4.0).map_err(|e| e.to_string())?,
        Alpha::Infinite,
    ] {
        let p = SolverParams::new(alpha, 1e-2, 0.2, None).map_err(|e| e.to_string())?;
        let tr = run(&s0, &p).map_err(|e| e.to_string())?;
        let (m0, m1) = (
            tr.samples[0].diagnostics.mass,
            tr.samples.last().expect("samples").diagnostics.mass,
        );
        let drift = (m1 - m0).abs() / m0;
        ensure(drift < 1e-9, || {
            format!("alpha={alpha}: mass drift {drift:.3e}")
        })?;
    }
    Ok(())
}

fn energy() -> Check {
    let g = Grid::new(8, 2.0 * PI).map_err(|e| e.to_string())?;
    let s0 = smooth_state(&g)?;
    let alpha = Alpha::finite(2.0).map_err(|e| e.to_string())?;
    let h0 = hamiltonian(&s0, alpha).map_err(|e| e.to_string())?;
    let drift = |dt: f64| -> Result<f64, String> {
        let p = SolverParams::new(alpha, dt, 0.2, None).map_err(|e| e.to_string())?;
        let tr = run(&s0, &p).map_err(|e| e.to_string())?;
        let h1 = hamiltonian(tr.last(), alpha).map_err(|e| e.to_string())?;
        Ok((h1 - h0).abs())
    };
    let (a, b) = (drift(1e-2)?, drift(5e-3)?);
    ensure(b < a / 2.5, || {
        format!("energy drift does not fall with dt: {a:.3e} -> {b:.3e}")
    })?;
    ensure(mass(&s0) > 0.0, || "zero mass".into())
}

fn limitlab() -> Check {
    let g = Grid::new(8, 2.0 * PI).map_err(|e| e.to_string())?;
    let s0 = smooth_state(&g)?;
    let p = SolverParams::new(
        Alpha::finite(3.0).map_err(|e| e.to_string())?,
        1e-2,
        0.1,
        Some(2),
    )
    .map_err(|e| e.to_string())?;
    let tr = run(&s0, &p).map_err(|e| e.to_string())?;
    let e = error_norms(&tr, &tr).map_err(|e| e.to_string())?;
    ensure(e.total() == 0.0, || format!("self error {:.3e}", e.total()))?;
    let fit = fit_loglog(&[(1.0, 1.0), (2.0, 0.5), (4.0, 0.25)]).map_err(|e| e.to_string())?;
    ensure((fit.slope + 1.0).abs() < 1e-12, || {
        format!("geometric fit slope {}", fit.slope)
    })
}

fn persistence() -> Check {
    let g = Grid::new(4, 1.5).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let u = random_field(&g, &mut rng);
    let snap = FieldSnapshot::from_vector(&u, 0.25, Alpha::Infinite);
    let bytes = snap.to_bytes();
    let back = FieldSnapshot::from_bytes(&bytes).map_err(|e| e.to_string())?;
    ensure(back.to_bytes() == bytes, || {
        "round trip is not byte-identical".into()
    })?;
    let path = std::env::temp_dir().join(format!("zak-verify-{}.zkf", std::process::id()));
    std::fs::write(&path, &bytes[..bytes.len() - 5]).map_err(|e| e.to_string())?;
    let read = FieldSnapshot::read(&path);
    let _ = std::fs::remove_file(&path);
    ensure(read.is_err(), || "truncated snapshot was accepted".into())
}

fn config() -> Check {
    let c = parse_config("").map_err(|e| e.to_string())?;
    ensure(c == RunConfig::default(), || {
        "empty config differs from defaults".into()
    })?;
    let err = parse_config("solver.dt = -1")
        .err()
        .ok_or("negative dt accepted")?;
    ensure(err.key == "solver.dt", || {
        format!("error names `{}`", err.key)
    })?;
    ensure(parse_config("bogus = 1").is_err(), || {
        "unknown key accepted".into()
    })
}

/// Run every group, print one line each and return whether all passed.
pub fn run_verify(fault: Option<Fault>, out: &mut impl Write) -> std::io::Result<bool> {
    let sym = match fault {
        Some(Fault::ZeroMode) => {
            let eye: Mat3 = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
            ProjectionSymbol::with_zero_mode_blocks(eye, eye)
        }
        None => ProjectionSymbol::default(),
    };
    let groups: [Group; 8] = [
        (
            "projection algebra",
            Box::new(move || projection_algebra(&sym)),
        ),
        ("propagators", Box::new(propagators)),
        ("wave", Box::new(wave)),
        ("solver", Box::new(solver)),
        ("energy", Box::new(energy)),
        ("limitlab", Box::new(limitlab)),
        ("persistence", Box::new(persistence)),
        ("config", Box::new(config)),
    ];
    let mut all = true;
    for (name, check) in groups {
        match check() {
            Ok(()) => writeln!(out, "PASS {name}")?,
            Err(why) => {
                all = false;
                writeln!(out, "FAIL {name}: {why}")?;
            }
        }
    }
    Ok(all)
}
