//! Real periods of `y^2 = x^3 + Ax + B` by the arithmetic-geometric mean.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::calibration::CalibrationError;
use crate::scalar::Real;

/// `-16 (4A^3 + 27B^2)`.
pub fn discriminant(a: &BigInt, b: &BigInt) -> BigInt {
    BigInt::from(-16) * (BigInt::from(4) * a * a * a + BigInt::from(27) * b * b)
}

/// `Omega = int_{E(R)} |dx / 2y|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodResult<F> {
    pub omega: F,
    pub est_error: F,
    /// Number of connected components of the real locus.
    pub components: u8,
}

/// Real roots of `x^3 + Ax + B`, descending.
pub fn cubic_real_roots<F: Real>(a: F, b: F) -> Vec<F> {
    let three = F::lit(3.0);
    let d = F::lit(4.0) * a * a * a + F::lit(27.0) * b * b;
    let mut roots = if d < F::zero() {
        // three real roots, a < 0
        let r = F::lit(2.0) * (-a / three).sqrt();
        let c = (three * b / (F::lit(2.0) * a) * (-three / a).sqrt()).max(-F::one()).min(F::one());
        let theta = c.acos() / three;
        let step = F::lit(2.0) * F::PI() / three;
        (0..3)
            .map(|k| r * (theta - step * F::from_u32(k).unwrap()).cos())
            .collect::<Vec<_>>()
    } else {
        let s = (d / F::lit(108.0)).sqrt();
        let half = -b / F::lit(2.0);
        let w = if b > F::zero() { half - s } else { half + s };
        let u = w.cbrt();
        let v = if u == F::zero() { F::zero() } else { -a / (three * u) };
        vec![u + v]
    };
    for x in &mut roots {
        for _ in 0..3 {
            let f = (*x * *x + a) * *x + b;
            let df = three * *x * *x + a;
            if df == F::zero() {
                break;
            }
            *x = *x - f / df;
        }
    }
    roots.sort_by(|p, q| q.partial_cmp(p).unwrap());
    if d == F::zero() {
        roots.dedup();
    }
    roots
}

/// `(AGM(x, y), final |a - b| / a)`.
pub fn agm<F: Real>(mut x: F, mut y: F) -> Result<(F, F), CalibrationError> {
    let eps = F::epsilon() * F::lit(4.0);
    for _ in 0..64 {
        let gap = (x - y).abs();
        if gap <= eps * x {
            return Ok((x, gap / x));
        }
        let next = (x + y) / F::lit(2.0);
        y = (x * y).sqrt();
        x = next;
    }
    Err(CalibrationError::NoConvergence)
}

pub fn real_period<F: Real>(a: F, b: F, tol: F) -> Result<PeriodResult<F>, CalibrationError> {
    let d = F::lit(4.0) * a * a * a + F::lit(27.0) * b * b;
    if d == F::zero() {
        return Err(CalibrationError::Singular);
    }
    let roots = cubic_real_roots(a, b);
    let (mean, gap, components) = if d < F::zero() {
        let (e1, e2, e3) = (roots[0], roots[1], roots[2]);
        let (m, g) = agm((e1 - e3).sqrt(), (e1 - e2).sqrt())?;
        // each component contributes pi / AGM
        (m / F::lit(2.0), g, 2u8)
    } else {
        let e1 = roots[0];
        let m = (F::lit(3.0) * e1 * e1 + a).sqrt();
        let h = F::lit(1.5) * e1;
        // m + h without cancellation when e1 < 0: (m^2 - h^2) / (m - h)
        let sum = if h >= F::zero() {
            m + h
        } else {
            (F::lit(0.75) * e1 * e1 + a) / (m - h)
        };
        let (mm, g) = agm(m.sqrt(), (sum / F::lit(2.0)).sqrt())?;
        (mm, g, 1u8)
    };
    let omega = F::PI() / mean;
    let est_error = omega * (gap + F::epsilon() * F::lit(64.0));
    if est_error > tol {
        return Err(CalibrationError::ToleranceUnreachable);
    }
    Ok(PeriodResult {
        omega,
        est_error,
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminant_examples() {
        let d = |a: i64, b: i64| discriminant(&a.into(), &b.into());
        assert_eq!(d(-1, 0), BigInt::from(64));
        assert_eq!(d(0, 1), BigInt::from(-432));
        assert_eq!(d(-3, 2), BigInt::from(0));
    }

    #[test]
    fn roots_solve_cubic() {
        for &(a, b) in &[(-1.0, 0.0), (0.0, 1.0), (-7.0, 6.0), (5.0, -3.0), (-100.0, 1.0), (0.0, -8.0)] {
            let roots = cubic_real_roots::<f64>(a, b);
            let disc = 4.0 * a * a * a + 27.0 * b * b;
            assert_eq!(roots.len(), if disc < 0.0 { 3 } else { 1 });
            for x in roots {
                assert!((x * x * x + a * x + b).abs() < 1e-10 * (1.0 + x.abs().powi(3)));
            }
        }
        assert_eq!(cubic_real_roots::<f64>(-7.0, 6.0), vec![2.0, 1.0, -3.0]);
    }

    #[test]
    fn scaling_law() {
        let w1 = real_period(-1.0f64, 0.0, 1e-12).unwrap();
        let w2 = real_period(-16.0f64, 0.0, 1e-12).unwrap();
        assert!((w1.omega - 2.0 * w2.omega).abs() < 1e-9);
        assert_eq!(w1.components, 2);
        let w3 = real_period(0.0f64, 1.0, 1e-12).unwrap();
        assert_eq!(w3.components, 1);
        assert!(w3.omega > 0.0 && w3.est_error < 1e-12);
    }

    #[test]
    fn errors() {
        assert_eq!(real_period(-3.0f64, 2.0, 1e-10), Err(CalibrationError::Singular));
        assert_eq!(real_period(-1.0f64, 0.0, 1e-30), Err(CalibrationError::ToleranceUnreachable));
    }

    #[test]
    fn f32_period() {
        let w = real_period(-1.0f32, 0.0, 1e-4).unwrap();
        let w64 = real_period(-1.0f64, 0.0, 1e-12).unwrap();
        assert!((w.omega as f64 - w64.omega).abs() < 1e-4);
    }
}
