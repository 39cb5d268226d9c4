//! Command layer for batch trajectory analysis: `analyze`, `plot`, `bench`
//! and `synth`. Each command is a plain function so tests can drive it
//! without spawning a process.

pub mod bench;
pub mod config;
pub mod error;
pub mod export;
pub mod pipeline;
pub mod plot;
pub mod report;

use std::path::Path;

pub use config::{Granularity, RunConfig};
pub use error::{CliError, CliResult};
pub use pipeline::{analyze_dataset, cmd_analyze};
pub use report::CohortReport;

pub fn cmd_synth(params: hamtraj::SynthParams, out: &Path) -> CliResult<hamtraj::Dataset> {
    let ds = hamtraj::synth_dataset(params).map_err(|e| CliError::stage("synth", e))?;
    if let Some(dir) = out.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    hamtraj::write_dataset(&ds, out).map_err(|e| CliError::stage("synth", e))?;
    Ok(ds)
}
