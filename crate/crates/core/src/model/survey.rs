//! Proxy-rank surveys over height bands.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::model::{draw_corank, exponent_fit, sample_curve_in_band_u128, BinomialEstimate, ModelConfig, ModelError, PowerLawFit};
use crate::rng::{chunks, task_index, task_rng};

/// Thresholds `r` reported per band.
pub const SURVEY_MAX_RANK: usize = 5;

const CHUNK: u64 = 4_096;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub h_lo: u128,
    pub h_hi: u128,
    pub r: usize,
    pub samples: u64,
    pub hits: u64,
    pub p_hat: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyFit {
    pub r: usize,
    /// Expected slope `-(r - 1)/24` under the calibration.
    pub target: f64,
    pub fit: PowerLawFit<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Survey {
    pub records: Vec<SurveyRecord>,
    pub fits: Vec<SurveyFit>,
}

impl Survey {
    pub fn fit_for(&self, r: usize) -> Option<&SurveyFit> {
        self.fits.iter().find(|f| f.r == r)
    }
}

/// Histogram of proxy ranks for `curves` curves with height in `(h/2, h]`.
pub fn band_corank_counts(h: u128, curves: u64, cfg: &ModelConfig, band: u64) -> Vec<u64> {
    chunks(curves, CHUNK)
        .into_par_iter()
        .enumerate()
        .map(|(task, (_, len))| {
            let mut rng = task_rng(cfg.seed, task_index(16 + band, task as u64));
            let mut counts = vec![0u64; SURVEY_MAX_RANK + 1];
            for _ in 0..len {
                let (_, _, height) = sample_curve_in_band_u128(h, &mut rng);
                let (_, corank) = draw_corank(height as f64, cfg, &mut rng);
                counts[corank.min(SURVEY_MAX_RANK)] += 1;
            }
            counts
        })
        .reduce(
            || vec![0u64; SURVEY_MAX_RANK + 1],
            |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        )
}

/// Estimates `Prob(rk' >= r)` for `r = 1..=5` in each band `(H/2, H]` and fits
/// the log-log slope against `H` for every `r >= 2` with hits at all heights.
pub fn rank_survey(h_grid: &[u128], curves_per_band: u64, cfg: &ModelConfig) -> Result<Survey, ModelError> {
    cfg.validate()?;
    if h_grid.len() < 3 {
        return Err(ModelError::Config("height grid needs at least 3 points".into()));
    }
    if h_grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(ModelError::Config("height grid must be increasing".into()));
    }
    if h_grid[0] < 100 {
        return Err(ModelError::Config("heights must be at least 100".into()));
    }
    if curves_per_band == 0 {
        return Err(ModelError::Config("curves_per_band must be positive".into()));
    }
    let mut records = Vec::new();
    for (band, &h) in h_grid.iter().enumerate() {
        let counts = band_corank_counts(h, curves_per_band, cfg, band as u64);
        for r in 1..=SURVEY_MAX_RANK {
            let hits: u64 = counts[r..].iter().sum();
            let e = BinomialEstimate::new(hits, curves_per_band);
            records.push(SurveyRecord {
                h_lo: h / 2,
                h_hi: h,
                r,
                samples: curves_per_band,
                hits,
                p_hat: e.p_hat,
                stderr: e.stderr,
            });
        }
    }
    let mut fits = Vec::new();
    for r in 2..=SURVEY_MAX_RANK {
        let points: Vec<(f64, f64)> = records
            .iter()
            .filter(|rec| rec.r == r)
            .map(|rec| (rec.h_hi as f64, rec.p_hat))
            .collect();
        if points.iter().all(|&(_, p)| p > 0.0) {
            fits.push(SurveyFit {
                r,
                target: -((r - 1) as f64) / 24.0,
                fit: exponent_fit(&points)?,
            });
        }
    }
    Ok(Survey { records, fits })
}
