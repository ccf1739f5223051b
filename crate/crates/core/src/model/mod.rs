//! The random alternating-matrix model attached to curves `y^2 = x^3 + Ax + B`.

mod curve;
mod distributions;
mod draw;
mod fit;
mod schedule;
mod survey;
mod table;

use thiserror::Error;

pub use curve::{
    count_curves_exact, curve_height, is_valid_curve, kappa, sample_curve_in_band,
    sample_curve_in_band_u128, CurveParams, DEFAULT_COUNT_CAP,
};
pub use distributions::{
    empirical_cl_distribution, empirical_corank_prob, empirical_sha_distribution, square_cyclic_fraction,
    BinomialEstimate, EmpiricalDistribution, Mode, EXACT_CORANK_CAP,
};
pub use draw::{draw_corank, draw_matrix, draw_model, random_alternating, ModelDraw};
pub use fit::{exponent_fit, PowerLawFit};
pub use schedule::{model_params, EtaSchedule, ModelConfig, ModelParams};
pub use survey::{band_corank_counts, rank_survey, Survey, SurveyFit, SurveyRecord, SURVEY_MAX_RANK};
pub use table::{predicted_table, PredictedRow};

use crate::counting::CountingError;
use crate::linalg::LinalgError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{what} {value} exceeds cap {cap}")]
    OverCap {
        what: &'static str,
        value: String,
        cap: String,
    },
    #[error("conditioning accepted only {accepted} draws in {attempts} attempts")]
    Conditioning { attempts: u64, accepted: u64 },
    #[error("fit failed: {0}")]
    Fit(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Counting(#[from] CountingError),
}
