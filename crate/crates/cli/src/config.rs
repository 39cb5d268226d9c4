use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// Sampling unit for the MANOVA on reduced coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Granularity {
    PerChain,
    #[default]
    PerStep,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub input: PathBuf,
    /// Not echoed into the report, so reruns into another directory compare equal.
    #[serde(skip)]
    pub out: PathBuf,
    pub pca_k: usize,
    pub temperature: f64,
    pub seed: u64,
    pub granularity: Granularity,
    pub plot: bool,
}

impl RunConfig {
    pub fn new(input: impl Into<PathBuf>, out: impl Into<PathBuf>) -> Self {
        Self {
            input: input.into(),
            out: out.into(),
            pca_k: 3,
            temperature: 1.0,
            seed: 0,
            granularity: Granularity::default(),
            plot: false,
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        if !(2..=3).contains(&self.pca_k) {
            return Err(CliError::Invalid(format!("--pca-k must be 2 or 3, got {}", self.pca_k)));
        }
        if !(self.temperature.is_finite() && self.temperature > 0.0) {
            return Err(CliError::Invalid(format!(
                "--temperature must be positive, got {}",
                self.temperature
            )));
        }
        Ok(())
    }
}
