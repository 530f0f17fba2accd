//! Least-squares rates in log-log coordinates.

use super::{LabError, SweepRecord};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
    pub points: usize,
}

/// Ordinary least squares of `ln y` on `ln x`. Points with a nonpositive or
/// non-finite coordinate are dropped; fewer than three remaining is an error.
pub fn fit_loglog(points: &[(f64, f64)]) -> Result<RateFit, LabError> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0 && x.is_finite() && y.is_finite())
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 3 {
        return Err(LabError::TooFewPoints(pts.len()));
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(LabError::DegenerateFit);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy / (sxx * syy)).clamp(0.0, 1.0)
    };
    Ok(RateFit {
        slope,
        intercept,
        r_squared,
        points: pts.len(),
    })
}

/// Fit `err_total` against `α`, skipping diverged records.
pub fn fit_rate(records: &[SweepRecord]) -> Result<RateFit, LabError> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.diverged_at.is_none())
        .map(|r| (r.alpha, r.err_total()))
        .collect();
    fit_loglog(&pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::limitlab::ErrorNorms;
    use rand::{Rng, SeedableRng};

    fn rec(alpha: f64, e: f64) -> SweepRecord {
        SweepRecord {
            alpha,
            errors: ErrorNorms {
                u_linf_h2: e,
                ..Default::default()
            },
            runtime_s: 0.0,
            diverged_at: None,
        }
    }

    #[test]
    fn exact_geometric_decay() {
        let f = fit_rate(&[rec(1.0, 1.0), rec(2.0, 0.5), rec(4.0, 0.25)]).unwrap();
        assert!((f.slope + 1.0).abs() < 1e-14);
        assert!((f.r_squared - 1.0).abs() < 1e-14);
        assert!(f.intercept.abs() < 1e-14);
    }

    #[test]
    fn constant_errors_have_zero_slope() {
        let f = fit_rate(&[rec(1.0, 0.3), rec(2.0, 0.3), rec(8.0, 0.3)]).unwrap();
        assert!(f.slope.abs() < 1e-14);
    }

    #[test]
    fn noisy_square_root_decay() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let recs: Vec<_> = (0..7)
            .map(|i| {
                let a = 2f64.powi(i);
                rec(a, a.powf(-0.5) * (1.0 + 0.01 * rng.random_range(-1.0..1.0)))
            })
            .collect();
        let f = fit_rate(&recs).unwrap();
        assert!((-0.55..=-0.45).contains(&f.slope), "{}", f.slope);
    }

    #[test]
    fn exclusions_and_errors() {
        let mut bad = rec(8.0, 0.1);
        bad.diverged_at = Some(0.2);
        let recs = [rec(1.0, 1.0), rec(2.0, 0.0), rec(4.0, 0.25), bad];
        assert!(matches!(fit_rate(&recs), Err(LabError::TooFewPoints(2))));
        assert!(matches!(
            fit_loglog(&[(2.0, 1.0), (2.0, 3.0), (2.0, 4.0)]),
            Err(LabError::DegenerateFit)
        ));
    }
}
