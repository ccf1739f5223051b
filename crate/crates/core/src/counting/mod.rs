//! Counting alternating integer matrices by rank, and the lattice identities
//! behind the L2 asymptotics.

mod enumerate;
mod lattice;
mod squarefree;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use enumerate::{
    alternating_rank_small, count_alternating_by_rank, enumeration_size, fold_alternating, l2_budget, l2_entry_max,
    Norm, RankHistogram, DEFAULT_ENUMERATION_CAP,
};
pub use lattice::{
    build_r_basis, check_det_identity, check_inner_product_identity, det_identity_sides, gram_det, gram_matrix,
    matrix_inner, LatticeBasis,
};
pub use squarefree::{is_squarefree, squarefree_pfaffian_fraction, squarefree_pfaffian_fraction_exact};

use crate::model::{exponent_fit, PowerLawFit};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CountingError {
    #[error("enumeration of {size:.3e} matrices exceeds cap {cap}")]
    OverCap { size: f64, cap: u64 },
    #[error("unknown norm `{0}` (expected box or l2)")]
    BadNorm(String),
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("basis vectors have different lengths")]
    Ragged,
    #[error("lattice rank {0} is below 2")]
    RankTooSmall(usize),
    #[error("dimension {0} is odd")]
    OddDimension(usize),
    #[error("value {0} too large to factor")]
    TooLarge(String),
    #[error("fit failed: {0}")]
    Fit(String),
}

/// Which count is regressed against the bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Statistic {
    RankExactly(usize),
    RankAtMost(usize),
    CorankAtLeast(usize),
    CorankFractionAtLeast(usize),
}

impl Statistic {
    pub fn eval(&self, h: &RankHistogram) -> f64 {
        match *self {
            Statistic::RankExactly(r) => h.rank_exactly(r) as f64,
            Statistic::RankAtMost(r) => h.rank_at_most(r) as f64,
            Statistic::CorankAtLeast(c) => h.corank_at_least(c) as f64,
            Statistic::CorankFractionAtLeast(c) => h.corank_at_least(c) as f64 / h.total().max(1) as f64,
        }
    }

    fn raw_count(&self, h: &RankHistogram) -> u64 {
        match *self {
            Statistic::RankExactly(r) => h.rank_exactly(r),
            Statistic::RankAtMost(r) => h.rank_at_most(r),
            Statistic::CorankAtLeast(c) | Statistic::CorankFractionAtLeast(c) => h.corank_at_least(c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    pub n: usize,
    pub norm: String,
    pub bound: u64,
    /// Regression abscissa: `2X + 1` for the box, `T` for l2.
    pub scale: f64,
    pub total: u64,
    pub count: u64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CountingFit {
    pub rows: Vec<CountRow>,
    pub skipped: Vec<u64>,
    pub fit: PowerLawFit<f64>,
}

/// Enumerates at each bound and fits `value ~ C * scale^slope`, where the
/// scale is the number of admissible values per entry (box) or `T` (l2). Bounds whose
/// raw count is below `min_count` are reported in `skipped`. At least four
/// bounds are required.
pub fn fit_counting_exponent(
    n: usize,
    statistic: Statistic,
    bounds: &[u64],
    norm: Norm,
    min_count: u64,
    cap: u64,
) -> Result<CountingFit, CountingError> {
    if bounds.len() < 4 {
        return Err(CountingError::Fit(format!("need at least 4 bounds, got {}", bounds.len())));
    }
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for &bound in bounds {
        let h = count_alternating_by_rank(n, bound, norm, cap)?;
        let count = statistic.raw_count(&h);
        if count < min_count.max(1) {
            skipped.push(bound);
            continue;
        }
        rows.push(CountRow {
            n,
            norm: norm.name().to_string(),
            bound,
            scale: norm.scale(bound),
            total: h.total(),
            count,
            value: statistic.eval(&h),
        });
    }
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.scale, r.value)).collect();
    let fit = exponent_fit(&points).map_err(|e| CountingError::Fit(e.to_string()))?;
    Ok(CountingFit { rows, skipped, fit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_zero_n2_is_constant() {
        let f = fit_counting_exponent(2, Statistic::RankExactly(0), &[1, 2, 4, 8], Norm::Box, 1, 1_000).unwrap();
        assert!(f.fit.slope.abs() < 1e-12);
        assert!(f.rows.iter().all(|r| r.count == 1));
        assert!(fit_counting_exponent(2, Statistic::RankExactly(0), &[1, 2, 4, 8], Norm::Box, 20, 1_000).is_err());
    }

    #[test]
    fn low_rank_n4_box() {
        let f = fit_counting_exponent(4, Statistic::RankAtMost(2), &[2, 3, 4, 5, 6, 7, 8], Norm::Box, 20, 1_000_000_000).unwrap();
        assert!((f.fit.slope - 4.0).abs() < 0.4, "{}", f.fit.slope);
        assert!(fit_counting_exponent(2, Statistic::RankAtMost(0), &[1, 2, 3], Norm::Box, 1, 1_000).is_err());
    }

    #[test]
    fn l2_rank2_n3() {
        let bounds: Vec<u64> = (5..=20).collect();
        let f = fit_counting_exponent(3, Statistic::RankExactly(2), &bounds, Norm::L2, 20, 1_000_000_000).unwrap();
        assert!((f.fit.slope - 3.0).abs() < 0.4, "{}", f.fit.slope);
    }

    #[test]
    fn full_rank_n2_is_linear() {
        let f = fit_counting_exponent(2, Statistic::RankExactly(2), &[10, 20, 40, 80], Norm::Box, 1, 1_000).unwrap();
        assert!((f.fit.slope - 1.0).abs() < 0.03);
    }
}
