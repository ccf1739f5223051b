//! Discriminants, real periods and the divisor-count helper.

mod period;
pub mod quadrature;
mod scan;

use thiserror::Error;

pub use period::{agm, cubic_real_roots, discriminant, real_period, PeriodResult};
pub use scan::{period_bound_scan, period_row, PeriodRow, PeriodScan};

use crate::primes::factorize;

/// Largest argument accepted by [`divisor_count`].
pub const DIVISOR_COUNT_CAP: u64 = 1_000_000_000_000_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CalibrationError {
    #[error("curve is singular")]
    Singular,
    #[error("iteration did not converge")]
    NoConvergence,
    #[error("requested tolerance is below attainable precision")]
    ToleranceUnreachable,
    #[error("value too large")]
    TooLarge,
    #[error("{0}")]
    Config(String),
    #[error("{m} outside 1..={cap}")]
    OutOfRange { m: u64, cap: u64 },
    #[error(transparent)]
    Model(#[from] crate::model::ModelError),
}

/// Number of positive divisors of `m`.
pub fn divisor_count(m: u64) -> Result<u64, CalibrationError> {
    if m == 0 || m > DIVISOR_COUNT_CAP {
        return Err(CalibrationError::OutOfRange {
            m,
            cap: DIVISOR_COUNT_CAP,
        });
    }
    Ok(factorize(m).iter().map(|&(_, e)| u64::from(e) + 1).product())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn divisor_examples() {
        assert_eq!(divisor_count(1), Ok(1));
        assert_eq!(divisor_count(12), Ok(6));
        assert_eq!(divisor_count(64), Ok(7));
        assert_eq!(divisor_count(999_999_999_999_999_989), Ok(2));
        assert!(divisor_count(0).is_err());
        assert!(divisor_count(DIVISOR_COUNT_CAP + 1).is_err());
    }

    proptest! {
        #[test]
        fn matches_trial_count(m in 1u64..5_000) {
            let brute = (1..=m).filter(|d| m % d == 0).count() as u64;
            prop_assert_eq!(divisor_count(m).unwrap(), brute);
        }

        #[test]
        fn agm_matches_quadrature(a in -500i64..500, b in -5_000i64..5_000) {
            prop_assume!(4 * a * a * a + 27 * b * b != 0);
            let w = real_period(a as f64, b as f64, 1e-10).unwrap();
            let q = quadrature::real_period_quadrature(a as f64, b as f64, 1e-12).unwrap();
            prop_assert!((w.omega - q).abs() <= 1e-8 * w.omega.max(1.0), "{} vs {}", w.omega, q);
        }

        #[test]
        fn scaling_covariance(a in -200i64..200, b in -2_000i64..2_000, l in prop::sample::select(vec![2i64, 3, 5])) {
            prop_assume!(4 * a * a * a + 27 * b * b != 0);
            let w = real_period(a as f64, b as f64, 1e-10).unwrap().omega;
            let s = real_period((a * l.pow(4)) as f64, (b * l.pow(6)) as f64, 1e-10).unwrap().omega;
            prop_assert!((s * l as f64 - w).abs() <= 1e-9 * w.max(1.0));
        }

        #[test]
        fn components_follow_discriminant_sign(a in -300i64..300, b in -3_000i64..3_000) {
            prop_assume!(4 * a * a * a + 27 * b * b != 0);
            let w = real_period(a as f64, b as f64, 1e-10).unwrap();
            let disc = discriminant(&a.into(), &b.into());
            prop_assert_eq!(w.components, if disc > 0.into() { 2 } else { 1 });
            prop_assert_eq!(cubic_real_roots(a as f64, b as f64).len(), w.components as usize * 2 - 1);
        }
    }
}
