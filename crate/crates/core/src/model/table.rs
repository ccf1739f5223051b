use serde::{Deserialize, Serialize};

/// Predicted rank percentages at height `H`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictedRow {
    pub h: f64,
    /// `50 (1 - H^{-1/24})`
    pub rank0: f64,
    /// `50 (1 - H^{-1/12})`
    pub rank1: f64,
    /// `50 H^{-1/24}`
    pub rank_ge2: f64,
    /// `50 H^{-1/12}`
    pub rank_ge3: f64,
}

impl PredictedRow {
    pub fn percentages(&self) -> [f64; 4] {
        [self.rank0, self.rank1, self.rank_ge2, self.rank_ge3]
    }
}

pub fn predicted_table(h_list: &[f64]) -> Vec<PredictedRow> {
    h_list
        .iter()
        .map(|&h| {
            let a = h.powf(-1.0 / 24.0);
            let b = h.powf(-1.0 / 12.0);
            PredictedRow {
                h,
                rank0: 50.0 * (1.0 - a),
                rank1: 50.0 * (1.0 - b),
                rank_ge2: 50.0 * a,
                rank_ge3: 50.0 * b,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complementary_columns() {
        for r in predicted_table(&[1e3, 1e10, 1e20]) {
            assert!((r.rank0 + r.rank_ge2 - 50.0).abs() < 1e-12);
            assert!((r.rank1 + r.rank_ge3 - 50.0).abs() < 1e-12);
        }
    }

    #[test]
    fn printed_rows() {
        let t = predicted_table(&[1e10, 1e15]);
        let want = [[30.8, 42.7, 19.2, 7.3], [38.1, 47.2, 11.9, 2.8]];
        for (row, w) in t.iter().zip(want) {
            for (got, w) in row.percentages().iter().zip(w) {
                assert!((got - w).abs() <= 0.05 + 1e-9, "{got} vs {w}");
            }
        }
    }
}
