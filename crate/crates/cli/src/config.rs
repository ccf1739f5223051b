//! Flat run configuration shared by all subcommands.

use std::path::Path;

use altmodel::model::{EtaSchedule, ModelConfig};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Every key is a primitive (or a list of integers); unknown keys are rejected.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// `log` or `constant`.
    pub eta_schedule: String,
    pub eta_base: f64,
    pub eta_min: u32,
    pub eta_constant: u32,
    pub x_min: u64,
    pub calibration_num: u32,
    pub calibration_den: u32,
    /// Survey heights as powers of ten.
    pub h_grid_log10: Vec<u32>,
    pub samples_per_point: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let m = ModelConfig::default();
        let (base, eta_min) = match m.eta_schedule {
            EtaSchedule::Log { base, eta_min } => (base, eta_min),
            EtaSchedule::Constant { .. } => (3.0, 2),
        };
        Self {
            seed: m.seed,
            eta_schedule: m.eta_schedule.name().to_string(),
            eta_base: base,
            eta_min,
            eta_constant: 2,
            x_min: m.x_min,
            calibration_num: m.calibration_num,
            calibration_den: m.calibration_den,
            h_grid_log10: vec![6, 12, 18],
            samples_per_point: m.samples_per_point,
        }
    }
}

impl RunConfig {
    pub fn model(&self) -> Result<ModelConfig, CliError> {
        let eta_schedule = match self.eta_schedule.as_str() {
            "log" => EtaSchedule::Log {
                base: self.eta_base,
                eta_min: self.eta_min,
            },
            "constant" => EtaSchedule::Constant { eta: self.eta_constant },
            other => return Err(CliError::Config(format!("unknown eta_schedule `{other}`"))),
        };
        let cfg = ModelConfig {
            eta_schedule,
            x_min: self.x_min,
            calibration_num: self.calibration_num,
            calibration_den: self.calibration_den,
            seed: self.seed,
            samples_per_point: self.samples_per_point,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn h_grid(&self) -> Result<Vec<u128>, CliError> {
        self.h_grid_log10
            .iter()
            .map(|&e| {
                if (2..=30).contains(&e) {
                    Ok(10u128.pow(e))
                } else {
                    Err(CliError::Config(format!("h_grid_log10 entry {e} outside 2..=30")))
                }
            })
            .collect()
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("flat config serializes")
    }
}

/// Reads a TOML config, or the `config` object of a JSON run manifest.
pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let bad = |e: &dyn std::fmt::Display| CliError::Config(format!("{}: {e}", path.display()));
    let cfg: RunConfig = if text.trim_start().starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| bad(&e))?;
        let inner = v.get("config").cloned().unwrap_or(v);
        serde_json::from_value(inner).map_err(|e| bad(&e))?
    } else {
        toml::from_str(&text).map_err(|e| bad(&e))?
    };
    cfg.model()?;
    cfg.h_grid()?;
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_round_trips_through_toml() {
        let c = RunConfig::default();
        let back: RunConfig = toml::from_str(&c.to_toml()).unwrap();
        assert_eq!(back, c);
        assert_eq!(c.model().unwrap(), ModelConfig::default());
    }

    #[test]
    fn partial_and_bad_configs() {
        let c: RunConfig = toml::from_str("seed = 7\nx_min = 3").unwrap();
        assert_eq!((c.seed, c.x_min, c.eta_min), (7, 3, 2));
        assert!(toml::from_str::<RunConfig>("bogus = 1").is_err());
        let c: RunConfig = toml::from_str("x_min = 1").unwrap();
        assert!(c.model().is_err());
        let c: RunConfig = toml::from_str("eta_schedule = \"cubic\"").unwrap();
        assert!(c.model().is_err());
        let c: RunConfig = toml::from_str("h_grid_log10 = [6, 40]").unwrap();
        assert!(c.h_grid().is_err());
    }
}
