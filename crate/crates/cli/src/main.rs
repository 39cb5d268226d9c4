use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hamtraj::SynthParams;
use hamtraj_cli::plot::cmd_plot;
use hamtraj_cli::{bench, cmd_analyze, cmd_synth, CliResult, Granularity, RunConfig};

#[derive(Parser)]
#[command(name = "hamtraj", version, about = "Energy and geometry analysis of embedded reasoning chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a JSONL cohort and write report.json plus CSV exports.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 3)]
        pca_k: usize,
        #[arg(long, default_value_t = 1.0)]
        temperature: f64,
        #[arg(long, value_enum, default_value_t = Granularity::PerStep)]
        granularity: Granularity,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also render every plot kind into the output directory.
        #[arg(long)]
        plot: bool,
    },
    /// Render SVG figures from a saved report.
    Plot {
        #[arg(long)]
        report: PathBuf,
        #[arg(long, num_args = 1.., value_delimiter = ',', required = true)]
        kinds: Vec<String>,
        /// Output directory; defaults to the report's directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time the per-chain analysis at growing sizes and fit a power law.
    Bench {
        #[arg(long, default_value_t = 1024)]
        max_n: usize,
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
    /// Write a synthetic labeled cohort as JSONL.
    Synth {
        #[arg(long)]
        valid: usize,
        #[arg(long)]
        invalid: usize,
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> CliResult<()> {
    match cli.command {
        Command::Analyze { input, out, pca_k, temperature, granularity, seed, plot } => {
            let cfg = RunConfig { pca_k, temperature, granularity, seed, plot, ..RunConfig::new(input, out) };
            let report = cmd_analyze(&cfg)?;
            println!("analyzed {} chains into {}", report.chains.len(), cfg.out.display());
        }
        Command::Plot { report, kinds, out } => {
            for path in cmd_plot(&report, &kinds, out.as_deref())? {
                println!("wrote {}", path.display());
            }
        }
        Command::Bench { max_n, repeats } => {
            let r = bench::cmd_bench(max_n, repeats)?;
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            println!("{:>10}  {:>14}", "n", "seconds (min)");
            for (n, s) in r.sizes.iter().zip(&r.seconds) {
                println!("{n:>10}  {s:>14.6}");
            }
            println!("estimated exponent: {:.3}", r.exponent);
        }
        Command::Synth { valid, invalid, dim, steps, seed, out } => {
            let ds = cmd_synth(SynthParams { n_valid: valid, n_invalid: invalid, dim, steps, seed }, &out)?;
            println!("wrote {} chains to {}", ds.len(), out.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
