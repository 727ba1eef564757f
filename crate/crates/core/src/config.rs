//! Run configuration: one seeded generator, explicit budgets, reproducible
//! output paths. A JSON config file merges under command-line flags; flags
//! win.

use serde::{Deserialize, Serialize};
use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {err}")]
    Read { path: String, err: String },
    #[error("malformed config {path}: {err}")]
    Parse { path: String, err: String },
    #[error("{0} must be positive")]
    NonPositive(&'static str),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub seed: u64,
    pub worker_count: usize,
    pub node_budget: u64,
    /// Hard cap for the anti-Ramsey oracle's n.
    pub ar_n_cap: usize,
    /// Exhaustive-enumeration cap for the Turán oracle's n.
    pub ex_exhaustive_cap: usize,
    pub output_path: PathBuf,
    pub emit_traces: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            worker_count: 1,
            node_budget: crate::search::DEFAULT_BUDGET,
            ar_n_cap: 6,
            ex_exhaustive_cap: 8,
            output_path: PathBuf::from("out"),
            emit_traces: false,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &PathBuf) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Read {
            path: path.display().to_string(),
            err: e.to_string(),
        })?;
        let cfg: RunConfig = serde_json::from_str(&text).map_err(|e| ConfigError::Parse {
            path: path.display().to_string(),
            err: e.to_string(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.worker_count == 0 {
            return Err(ConfigError::NonPositive("worker_count"));
        }
        if self.node_budget == 0 {
            return Err(ConfigError::NonPositive("node_budget"));
        }
        Ok(())
    }
}
