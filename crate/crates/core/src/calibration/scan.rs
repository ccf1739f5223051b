//! Empirical scan of the normalized period `Omega * H^{1/12}`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calibration::{discriminant, real_period, CalibrationError};
use crate::model::sample_curve_in_band_u128;
use crate::rng::{chunks, task_index, task_rng};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodRow {
    pub a: i128,
    pub b: i128,
    pub h: u128,
    pub discriminant: i128,
    pub omega: f64,
    pub normalized: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodScan {
    pub rows: Vec<PeriodRow>,
    pub min: f64,
    pub q10: f64,
    pub median: f64,
    pub q90: f64,
    pub max: f64,
    /// Largest `Omega * H^{1/12} / ln H`.
    pub max_over_log: f64,
}

pub fn period_row(a: i128, b: i128) -> Result<PeriodRow, CalibrationError> {
    let (ua, ub) = (a.unsigned_abs(), b.unsigned_abs());
    let h = (4 * ua * ua * ua).max(27 * ub * ub);
    let disc = discriminant(&BigInt::from(a), &BigInt::from(b))
        .to_i128()
        .ok_or(CalibrationError::TooLarge)?;
    let w = real_period(a as f64, b as f64, 1e-10)?;
    Ok(PeriodRow {
        a,
        b,
        h,
        discriminant: disc,
        omega: w.omega,
        normalized: w.omega * (h as f64).powf(1.0 / 12.0),
    })
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let i = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[i]
}

/// Curves drawn with `H` log-uniform in `[h_lo, h_hi]`, then uniformly from
/// the band `(H/2, H]`.
pub fn period_bound_scan(h_lo: u128, h_hi: u128, samples: u64, seed: u64) -> Result<PeriodScan, CalibrationError> {
    if samples < 100 {
        return Err(CalibrationError::Config("period scan needs at least 100 samples".into()));
    }
    if h_lo < 100 || h_lo > h_hi || h_hi > 1u128 << 100 {
        return Err(CalibrationError::Config(format!("bad height range [{h_lo}, {h_hi}]")));
    }
    let (l0, l1) = ((h_lo as f64).ln(), (h_hi as f64).ln());
    let rows = chunks(samples, 256)
        .into_par_iter()
        .enumerate()
        .map(|(task, (_, len))| {
            let mut rng = task_rng(seed, task_index(5, task as u64));
            (0..len)
                .map(|_| {
                    let h = if l1 > l0 { rng.random_range(l0..=l1).exp() } else { l0.exp() };
                    let h = (h.round() as u128).clamp(h_lo, h_hi);
                    let (a, b, _) = sample_curve_in_band_u128(h, &mut rng);
                    period_row(a, b)
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .flatten()
        .collect::<Vec<_>>();
    let mut norm: Vec<f64> = rows.iter().map(|r| r.normalized).collect();
    norm.sort_by(f64::total_cmp);
    let max_over_log = rows
        .iter()
        .map(|r| r.normalized / (r.h as f64).ln())
        .fold(0.0, f64::max);
    Ok(PeriodScan {
        min: norm[0],
        q10: quantile(&norm, 0.1),
        median: quantile(&norm, 0.5),
        q90: quantile(&norm, 0.9),
        max: *norm.last().unwrap(),
        max_over_log,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalized_values_are_positive_and_log_bounded() {
        let s = period_bound_scan(10_000, 10_000_000_000, 300, 3).unwrap();
        assert_eq!(s.rows.len(), 300);
        assert!(s.rows.iter().all(|r| r.normalized.is_finite() && r.normalized > 0.0));
        assert!(s.min > 0.05, "{}", s.min);
        assert!(s.max_over_log < 10.0);
        assert!(s.min <= s.q10 && s.q10 <= s.median && s.median <= s.q90 && s.q90 <= s.max);
    }

    #[test]
    fn split_family_grows_like_log() {
        // y^2 = (x - a)(x - a - 1)(x + 2a + 1): two close roots
        let ratios: Vec<f64> = [10i128, 100, 1_000, 10_000]
            .iter()
            .map(|&t| {
                let (e1, e2, e3) = (t + 1, t, -2 * t - 1);
                let a = e1 * e2 + e1 * e3 + e2 * e3;
                let b = -e1 * e2 * e3;
                let r = period_row(a, b).unwrap();
                r.normalized / (r.h as f64).ln()
            })
            .collect();
        let (lo, hi) = ratios.iter().fold((f64::MAX, 0.0f64), |(l, h), &x| (l.min(x), h.max(x)));
        assert!(hi / lo < 2.0, "{ratios:?}");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(period_bound_scan(1_000, 10_000, 10, 1).is_err());
        assert!(period_bound_scan(10_000, 1_000, 100, 1).is_err());
    }
}
