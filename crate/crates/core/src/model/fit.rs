use serde::{Deserialize, Serialize};

use crate::model::ModelError;
use crate::scalar::Real;

/// Least-squares line through `(ln x, ln y)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit<F> {
    pub slope: F,
    pub intercept: F,
    pub r_squared: F,
    pub points: usize,
}

pub fn exponent_fit<F: Real>(points: &[(F, F)]) -> Result<PowerLawFit<F>, ModelError> {
    if points.len() < 3 {
        return Err(ModelError::Fit(format!("need at least 3 points, got {}", points.len())));
    }
    if let Some(&(x, y)) = points.iter().find(|(x, y)| !(*x > F::zero() && *y > F::zero())) {
        return Err(ModelError::Fit(format!("nonpositive point ({x}, {y})")));
    }
    let k = F::from_usize(points.len()).unwrap();
    let logs: Vec<(F, F)> = points.iter().map(|&(x, y)| (x.ln(), y.ln())).collect();
    let mx = logs.iter().fold(F::zero(), |a, p| a + p.0) / k;
    let my = logs.iter().fold(F::zero(), |a, p| a + p.1) / k;
    let (mut sxx, mut sxy, mut syy) = (F::zero(), F::zero(), F::zero());
    for &(lx, ly) in &logs {
        let (dx, dy) = (lx - mx, ly - my);
        sxx = sxx + dx * dx;
        sxy = sxy + dx * dy;
        syy = syy + dy * dy;
    }
    if sxx <= F::zero() {
        return Err(ModelError::Fit("all x values coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let r_squared = if syy <= F::zero() {
        F::one()
    } else {
        sxy * sxy / (sxx * syy)
    };
    Ok(PowerLawFit {
        slope,
        intercept,
        r_squared,
        points: points.len(),
    })
}
