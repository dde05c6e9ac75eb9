use serde::{Deserialize, Serialize};

use super::EstimateError;
use crate::Real;

/// Ordinary least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLogFit<F> {
    pub slope: F,
    /// Intercept in natural-log units: `ln y ≈ intercept + slope · ln x`.
    pub intercept: F,
    pub r_squared: F,
    pub n_points: usize,
}

impl<F: Real> LogLogFit<F> {
    /// Fitted `y` at `x`.
    pub fn predict(&self, x: F) -> F {
        (self.intercept + self.slope * x.ln()).exp()
    }
}

pub fn fit_loglog<F: Real>(samples: &[(F, F)]) -> Result<LogLogFit<F>, EstimateError> {
    if samples.len() < 2 {
        return Err(EstimateError::Degenerate(format!(
            "log-log fit needs at least 2 samples, got {}",
            samples.len()
        )));
    }
    if let Some(&(x, y)) = samples
        .iter()
        .find(|&&(x, y)| !(x > F::zero() && y > F::zero() && x.is_finite() && y.is_finite()))
    {
        return Err(EstimateError::Domain(format!(
            "log-log fit needs positive finite samples, got ({x}, {y})"
        )));
    }
    let logs: Vec<(F, F)> = samples.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let count = F::of(logs.len() as f64);
    let mean_x = logs.iter().map(|p| p.0).sum::<F>() / count;
    let mean_y = logs.iter().map(|p| p.1).sum::<F>() / count;
    let (mut sxx, mut sxy, mut syy) = (F::zero(), F::zero(), F::zero());
    for &(lx, ly) in &logs {
        let (dx, dy) = (lx - mean_x, ly - mean_y);
        sxx = sxx + dx * dx;
        sxy = sxy + dx * dy;
        syy = syy + dy * dy;
    }
    if sxx <= F::zero() {
        return Err(EstimateError::Degenerate(
            "log-log fit needs at least 2 distinct x values".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: F = logs
        .iter()
        .map(|&(lx, ly)| {
            let e = ly - (intercept + slope * lx);
            e * e
        })
        .sum();
    let r_squared = if syy > F::zero() {
        (F::one() - ss_res / syy).max(F::zero()).min(F::one())
    } else {
        F::one()
    };
    Ok(LogLogFit {
        slope,
        intercept,
        r_squared,
        n_points: logs.len(),
    })
}
