use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Least-squares line through `(ln n, ln t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogLogFit<S> {
    pub slope: S,
    pub intercept: S,
    /// `ln t − (intercept + slope · ln n)` per point.
    pub residuals: Vec<S>,
}

pub fn loglog_fit<S: Scalar>(points: &[(S, S)]) -> Result<LogLogFit<S>> {
    if points.len() < 2 {
        return Err(Error::InvalidArgument(format!("log-log fit needs at least 2 points, got {}", points.len())));
    }
    if let Some(&(x, y)) = points.iter().find(|&&(x, y)| !(x > S::zero() && y > S::zero())) {
        return Err(Error::InvalidArgument(format!("log-log fit needs positive coordinates, got ({x}, {y})")));
    }
    let logs: Vec<(S, S)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let k = S::of_usize(logs.len());
    let mx = logs.iter().map(|p| p.0).sum::<S>() / k;
    let my = logs.iter().map(|p| p.1).sum::<S>() / k;
    let sxx: S = logs.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == S::zero() {
        return Err(Error::InvalidArgument("log-log fit needs at least two distinct n".into()));
    }
    let sxy: S = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residuals = logs.iter().map(|&(x, y)| y - (intercept + slope * x)).collect();
    Ok(LogLogFit { slope, intercept, residuals })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_laws() {
        let sq: Vec<(f64, f64)> = [3.0, 10.0, 40.0].iter().map(|&n| (n, n * n)).collect();
        assert!((loglog_fit(&sq).unwrap().slope - 2.0).abs() < 1e-12);
        let p: Vec<(f64, f64)> = [5.0, 50.0, 70.0, 300.0].iter().map(|&n: &f64| (n, 7.0 * n.powf(1.6))).collect();
        let fit = loglog_fit(&p).unwrap();
        assert!((fit.slope - 1.6).abs() < 1e-10);
        assert!((fit.intercept - 7f64.ln()).abs() < 1e-10);
    }

    #[test]
    fn invalid_points() {
        assert!(loglog_fit(&[(1.0f64, 1.0)]).is_err());
        assert!(loglog_fit(&[(1.0f64, 1.0), (2.0, 0.0)]).is_err());
    }
}
