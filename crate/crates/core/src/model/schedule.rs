//! Calibration schedule: how matrix dimension `eta(H)` and entry bound
//! `X(H)` grow with height while `X^eta` tracks `H^(1/12)`.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::model::ModelError;

/// Growth law for `eta(H)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum EtaSchedule {
    /// `eta = max(eta_min, floor(ln(H^c) / ln base))`, where `H^c` is the
    /// calibration target. The default uses `base = 3`, `eta_min = 2`.
    Log { base: f64, eta_min: u32 },
    /// Fixed dimension parameter.
    Constant { eta: u32 },
}

impl Default for EtaSchedule {
    fn default() -> Self {
        EtaSchedule::Log {
            base: 3.0,
            eta_min: 2,
        }
    }
}

impl EtaSchedule {
    pub fn name(&self) -> &'static str {
        match self {
            EtaSchedule::Log { .. } => "log",
            EtaSchedule::Constant { .. } => "constant",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub eta_schedule: EtaSchedule,
    pub x_min: u64,
    /// `X^eta` targets `H^(num/den)`.
    pub calibration_num: u32,
    pub calibration_den: u32,
    pub seed: u64,
    pub samples_per_point: u64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            eta_schedule: EtaSchedule::default(),
            x_min: 2,
            calibration_num: 1,
            calibration_den: 12,
            seed: 0,
            samples_per_point: 10_000,
        }
    }
}

impl ModelConfig {
    pub fn calibration_exponent(&self) -> f64 {
        self.calibration_num as f64 / self.calibration_den as f64
    }

    pub fn validate(&self) -> Result<(), ModelError> {
        let bad = |msg: &str| Err(ModelError::Config(msg.to_string()));
        if self.x_min < 2 {
            return bad("x_min must be at least 2");
        }
        if self.calibration_num == 0 || self.calibration_den == 0 {
            return bad("calibration exponent must be positive");
        }
        match self.eta_schedule {
            EtaSchedule::Log { base, eta_min } => {
                if !(base > 1.0) || eta_min == 0 {
                    return bad("log schedule needs base > 1 and eta_min >= 1");
                }
            }
            EtaSchedule::Constant { eta } => {
                if eta == 0 {
                    return bad("constant schedule needs eta >= 1");
                }
            }
        }
        Ok(())
    }
}

/// Resolved model parameters at one height.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub eta: f64,
    /// `n` is drawn uniformly from `{n_low, n_low + 1}`, `n_low = ceil(eta)`.
    pub n_low: usize,
    pub x: u64,
}

impl ModelParams {
    pub fn choose_n<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        self.n_low + usize::from(rng.random_bool(0.5))
    }

    /// `x^eta`, the realized calibration product.
    pub fn product(&self) -> f64 {
        (self.x as f64).powf(self.eta)
    }
}

pub fn model_params(h: f64, cfg: &ModelConfig) -> ModelParams {
    assert!(h >= 100.0, "model needs H >= 100");
    let target_ln = cfg.calibration_exponent() * h.ln();
    let eta = match cfg.eta_schedule {
        EtaSchedule::Log { base, eta_min } => ((target_ln / base.ln()).floor() as u32).max(eta_min),
        EtaSchedule::Constant { eta } => eta,
    } as f64;
    // ceil(H^{c/eta}), guarding against float noise at exact integers
    let root = (target_ln / eta).exp();
    let mut x = root.ceil();
    if (x - 1.0 - root).abs() < 1e-9 * root {
        x -= 1.0;
    }
    ModelParams {
        eta,
        n_low: eta.ceil() as usize,
        x: (x as u64).max(cfg.x_min),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::task_rng;

    #[test]
    fn default_schedule_at_1e12() {
        let p = model_params(1e12, &ModelConfig::default());
        assert_eq!(p.eta, 2.0);
        assert_eq!(p.n_low, 2);
        assert_eq!(p.x, 4);
    }

    #[test]
    fn calibration_envelope_default_schedule() {
        let cfg = ModelConfig::default();
        let mut lg = 4.0;
        while lg <= 30.0 {
            let h = 10f64.powf(lg);
            let p = model_params(h, &cfg);
            let ratio = p.product() / h.powf(1.0 / 12.0);
            assert!((1.0 - 1e-9..=16.0).contains(&ratio), "H=1e{lg} ratio={ratio}");
            lg += 0.01;
        }
    }

    #[test]
    fn n_is_uniform_on_pair() {
        let p = model_params(1e12, &ModelConfig::default());
        let mut rng = task_rng(11, 0);
        let draws = 100_000;
        let high = (0..draws).filter(|_| p.choose_n(&mut rng) == 3).count() as f64;
        let sigma = (draws as f64 * 0.25).sqrt();
        assert!((high - draws as f64 / 2.0).abs() < 3.0 * sigma);
    }

    #[test]
    fn config_validation() {
        assert!(ModelConfig::default().validate().is_ok());
        let cfg = ModelConfig {
            x_min: 1,
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
        let cfg = ModelConfig {
            eta_schedule: EtaSchedule::Constant { eta: 0 },
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }
}
