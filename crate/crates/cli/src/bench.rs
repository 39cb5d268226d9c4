use std::time::{Duration, Instant};

use hamtraj::stats::complexity_fit;
use hamtraj::{synth_dataset, Dataset, SynthParams};

use crate::error::{CliError, CliResult};
use crate::pipeline::{analyze_chain, fit_models};

/// Shortest per-size timing we trust; below this the sizes are scaled up.
const MIN_TIMING: Duration = Duration::from_millis(2);
const MAX_ENLARGE: usize = 64;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub sizes: Vec<usize>,
    /// Minimum over repeats, in seconds.
    pub seconds: Vec<f64>,
    pub exponent: f64,
    pub warnings: Vec<String>,
}

/// Doubling sizes from 8 up to `max_n`, with `max_n` itself as the last entry.
pub fn size_ladder(max_n: usize) -> Vec<usize> {
    let mut sizes: Vec<usize> = std::iter::successors(Some(8usize), |n| n.checked_mul(2))
        .take_while(|&n| n <= max_n)
        .collect();
    if sizes.last() != Some(&max_n) {
        sizes.push(max_n);
    }
    sizes
}

fn cohort(n: usize) -> CliResult<Dataset> {
    synth_dataset(SynthParams { n_valid: n / 2, n_invalid: n - n / 2, dim: 16, steps: 6, seed: n as u64 })
        .map_err(|e| CliError::stage("synth", e))
}

/// Sequential per-chain analysis of `n` synthetic chains, PCA fit excluded.
fn time_core_loop(n: usize, repeats: usize) -> CliResult<Duration> {
    let ds = cohort(n)?;
    let models = fit_models(&ds, 3)?;
    let mut best = Duration::MAX;
    for _ in 0..repeats {
        let start = Instant::now();
        for c in ds.iter() {
            std::hint::black_box(analyze_chain(c, &models, 1.0)?);
        }
        best = best.min(start.elapsed());
    }
    Ok(best)
}

pub fn cmd_bench(max_n: usize, repeats: usize) -> CliResult<BenchReport> {
    if max_n < 8 {
        return Err(CliError::Invalid(format!("--max-n must be at least 8, got {max_n}")));
    }
    if repeats == 0 {
        return Err(CliError::Invalid("--repeats must be at least 1".into()));
    }
    let mut sizes = size_ladder(max_n);
    let mut warnings = Vec::new();
    let mut enlarge = 1;
    let timings = loop {
        let timings: Vec<Duration> = sizes.iter().map(|&n| time_core_loop(n, repeats)).collect::<CliResult<_>>()?;
        if timings[0] >= MIN_TIMING || enlarge >= MAX_ENLARGE {
            break timings;
        }
        let factor = ((MIN_TIMING.as_secs_f64() / timings[0].as_secs_f64().max(1e-9)).ceil() as usize)
            .clamp(2, MAX_ENLARGE / enlarge);
        enlarge *= factor;
        warnings.push(format!(
            "timer resolution too coarse for size {} ({:?}); enlarging all sizes by {factor}x",
            sizes[0], timings[0]
        ));
        sizes = sizes.iter().map(|n| n * factor).collect();
    };
    let seconds: Vec<f64> = timings.iter().map(Duration::as_secs_f64).collect();
    let xs: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
    let exponent = complexity_fit(&xs, &seconds).map_err(|e| CliError::stage("complexity fit", e))?;
    Ok(BenchReport { sizes, seconds, exponent, warnings })
}
