use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares line through `(ln N, ln T)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    /// Fitted exponent.
    pub slope: f64,
    pub intercept: f64,
    /// `None` with only two points.
    pub r_squared: Option<f64>,
    /// `None` with only two points.
    pub slope_stderr: Option<f64>,
    pub points_used: usize,
}

impl ScalingFit {
    pub fn predict(&self, x: f64) -> f64 {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

pub fn fit_scaling(points: &[(f64, f64)]) -> Result<ScalingFit> {
    if points.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "need at least two points, got {}",
            points.len()
        )));
    }
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(Error::InvalidParameter(format!(
            "log-log fit needs positive values, got ({x}, {y})"
        )));
    }
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("x values must be distinct".into()));
    }

    let logs: Vec<(f64, f64)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let m = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / m;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let syy: f64 = logs.iter().map(|p| (p.1 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;

    let (r_squared, slope_stderr) = if logs.len() >= 3 {
        let sse: f64 = logs
            .iter()
            .map(|p| (p.1 - intercept - slope * p.0).powi(2))
            .sum();
        let r2 = if syy > 0.0 {
            (1.0 - sse / syy).clamp(0.0, 1.0)
        } else {
            1.0
        };
        (Some(r2), Some((sse / (m - 2.0) / sxx).sqrt()))
    } else {
        (None, None)
    };
    Ok(ScalingFit {
        slope,
        intercept,
        r_squared,
        slope_stderr,
        points_used: logs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_points_exact() {
        let f = fit_scaling(&[(10.0, 100.0), (100.0, 1e4)]).unwrap();
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert_eq!(f.r_squared, None);
        assert_eq!(f.points_used, 2);
    }

    #[test]
    fn linear_three_points() {
        let f = fit_scaling(&[(10.0, 10.0), (100.0, 100.0), (1000.0, 1000.0)]).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-12);
        assert!((f.r_squared.unwrap() - 1.0).abs() < 1e-12);
        assert!(f.slope_stderr.unwrap() < 1e-12);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(fit_scaling(&[(10.0, 1.0)]).is_err());
        assert!(fit_scaling(&[(10.0, 1.0), (10.0, 2.0)]).is_err());
        assert!(fit_scaling(&[(10.0, 0.0), (20.0, 2.0)]).is_err());
    }

    proptest! {
        #[test]
        fn recovers_exact_power_laws(
            slope in -3.0f64..3.0,
            scale in 0.01f64..100.0,
            xs in proptest::collection::btree_set(1u32..100_000, 2..12),
        ) {
            let points: Vec<(f64, f64)> = xs
                .iter()
                .map(|&x| (x as f64, scale * (x as f64).powf(slope)))
                .collect();
            let f = fit_scaling(&points).unwrap();
            prop_assert!((f.slope - slope).abs() < 1e-12, "{} vs {}", f.slope, slope);
        }
    }
}
