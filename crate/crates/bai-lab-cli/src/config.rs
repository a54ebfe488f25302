//! Experiment configuration file format and validation.

use std::path::PathBuf;

use anyhow::{bail, Result};
use serde::{Deserialize, Serialize};

use bai_lab::{FamilySpec, StrategyConfig};

fn default_level() -> f64 {
    0.95
}

/// A full sweep description, read from a JSON file:
///
/// ```json
/// {
///   "family": {"type": "alpha", "K": 8, "alpha": 1.0},
///   "strategies": [{"kind": "uniform"}, {"kind": "ucb_e", "a": 176.0}],
///   "t_grid": [200, 400, 800],
///   "replications": 10000,
///   "seed": 7,
///   "level": 0.95,
///   "out_dir": "results"
/// }
/// ```
///
/// `--seed`, `--level`, and `--out` override the corresponding fields.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub family: FamilySpec,
    pub strategies: Vec<StrategyConfig>,
    pub t_grid: Vec<u64>,
    pub replications: u64,
    pub seed: u64,
    #[serde(default = "default_level")]
    pub level: f64,
    /// Output directory. Never echoed into metadata, so emitted artifacts
    /// are independent of where they were written.
    #[serde(default, skip_serializing)]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.strategies.is_empty() {
            bail!("config needs at least one strategy");
        }
        for strategy in &self.strategies {
            strategy.validate()?;
        }
        if self.t_grid.is_empty() {
            bail!("t_grid must be non-empty");
        }
        if self.t_grid.windows(2).any(|w| w[0] >= w[1]) {
            bail!("t_grid must be strictly increasing");
        }
        if self.replications == 0 {
            bail!("replications must be at least 1");
        }
        if !(self.level.is_finite() && 0.0 < self.level && self.level < 1.0) {
            bail!("confidence level must lie in (0, 1), got {}", self.level);
        }
        self.family.build()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_json() -> serde_json::Value {
        serde_json::json!({
            "family": {"type": "alpha", "K": 4, "alpha": 1.0},
            "strategies": [{"kind": "uniform"}],
            "t_grid": [10, 20],
            "replications": 100,
            "seed": 3
        })
    }

    #[test]
    fn parses_with_default_level_and_validates() {
        let config: ExperimentConfig = serde_json::from_value(base_json()).unwrap();
        assert_eq!(config.level, 0.95);
        assert!(config.out_dir.is_none());
        config.validate().unwrap();
    }

    #[test]
    fn rejects_bad_grids_strategies_and_levels() {
        let mut bad = base_json();
        bad["t_grid"] = serde_json::json!([20, 10]);
        let config: ExperimentConfig = serde_json::from_value(bad).unwrap();
        assert!(config.validate().is_err());

        let mut bad = base_json();
        bad["strategies"] = serde_json::json!([{"kind": "ucb_e"}]); // missing a
        let config: ExperimentConfig = serde_json::from_value(bad).unwrap();
        assert!(config.validate().is_err());

        let mut bad = base_json();
        bad["level"] = serde_json::json!(1.0);
        let config: ExperimentConfig = serde_json::from_value(bad).unwrap();
        assert!(config.validate().is_err());

        let mut bad = base_json();
        bad["replications"] = serde_json::json!(0);
        let config: ExperimentConfig = serde_json::from_value(bad).unwrap();
        assert!(config.validate().is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let mut bad = base_json();
        bad["worker_count"] = serde_json::json!(4);
        assert!(serde_json::from_value::<ExperimentConfig>(bad).is_err());
    }

    #[test]
    fn out_dir_is_not_serialized() {
        let mut with_dir = base_json();
        with_dir["out_dir"] = serde_json::json!("/tmp/somewhere");
        let config: ExperimentConfig = serde_json::from_value(with_dir).unwrap();
        let echoed = serde_json::to_value(&config).unwrap();
        assert!(echoed.get("out_dir").is_none());
    }
}
