//! Least-squares power-law fitting on log-log axes.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Result of an ordinary least-squares line fit of `log y` against `log x`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct PowerLawFit {
    /// Fitted exponent (slope in log-log space).
    pub exponent: f64,
    /// Fitted prefactor `c` in `y = c * x^exponent`.
    pub prefactor: f64,
    /// Residual sum of squares of the log-log fit.
    pub residual: f64,
}

/// OLS fit of `y = c * x^a` through `(x, y)` samples with `x, y > 0`.
///
/// Needs at least two samples with distinct `x`; a two-point fit is exact.
pub fn fit_power_law<R: Real>(samples: &[(R, R)]) -> Result<PowerLawFit> {
    if samples.len() < 2 {
        return Err(Error::InsufficientScales);
    }
    let logs: Vec<(f64, f64)> = samples
        .iter()
        .map(|&(x, y)| {
            let (x, y) = (x.to_f64_lossy(), y.to_f64_lossy());
            if x <= 0.0 || y <= 0.0 || !x.is_finite() || !y.is_finite() {
                Err(Error::InvalidParameter(format!(
                    "power-law fit requires positive finite samples, got ({x}, {y})"
                )))
            } else {
                Ok((x.ln(), y.ln()))
            }
        })
        .collect::<Result<_>>()?;

    let n = logs.len() as f64;
    let sx: f64 = logs.iter().map(|p| p.0).sum();
    let sy: f64 = logs.iter().map(|p| p.1).sum();
    let sxx: f64 = logs.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = logs.iter().map(|p| p.0 * p.1).sum();
    let det = n * sxx - sx * sx;
    if det.abs() < 1e-12 * n * sxx.max(1.0) {
        return Err(Error::InsufficientScales);
    }
    let slope = (n * sxy - sx * sy) / det;
    let intercept = (sy - slope * sx) / n;
    let residual = logs
        .iter()
        .map(|&(lx, ly)| {
            let e = ly - (slope * lx + intercept);
            e * e
        })
        .sum();
    Ok(PowerLawFit {
        exponent: slope,
        prefactor: intercept.exp(),
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law_recovered() {
        let samples: Vec<(f64, f64)> = (1..=6).map(|k| {
            let x = 2f64.powi(k);
            (x, 3.0 * x.powf(1.7))
        }).collect();
        let fit = fit_power_law(&samples).unwrap();
        assert!((fit.exponent - 1.7).abs() < 1e-12);
        assert!((fit.prefactor - 3.0).abs() < 1e-10);
        assert!(fit.residual < 1e-20);
    }

    #[test]
    fn two_points_is_exact() {
        let fit = fit_power_law(&[(1.0f64, 2.0), (4.0, 32.0)]).unwrap();
        assert!((fit.exponent - 2.0).abs() < 1e-12);
    }

    #[test]
    fn single_point_rejected() {
        assert!(matches!(
            fit_power_law(&[(1.0f64, 1.0)]),
            Err(Error::InsufficientScales)
        ));
    }

    #[test]
    fn identical_x_rejected() {
        assert!(fit_power_law(&[(2.0f64, 1.0), (2.0, 3.0)]).is_err());
    }
}
