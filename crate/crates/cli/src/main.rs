//! `dualband-delay`: delay estimation experiments on dual-band OFDM
//! channel measurements.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 configuration or usage error.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

use dualband_delay_cli::commands;
use dualband_delay_cli::config::{parse_config, RunConfig};
use dualband_delay_cli::error::{CliError, Result};
use dualband_delay_cli::presets;

#[derive(Parser)]
#[command(
    name = "dualband-delay",
    version,
    about = "Dual-band OFDM delay estimation: PSF characterization, delay profiles, \
             estimators, and Monte-Carlo sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Key = value config file.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Built-in experiment preset: fig4, fig5, fig6, or fig7.
    #[arg(long, global = true, value_name = "NAME")]
    preset: Option<String>,

    /// Write CSV here (secondary tables go to derived .tag.csv siblings);
    /// default is stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Override the config's master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Cap worker threads for sweeps (defaults to available parallelism;
    /// ignored in builds without the parallel feature).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit the subcarrier selection function, its point-spread function,
    /// and the PSF metrics row.
    Psf,
    /// Emit the delay profile of one synthesized scene.
    Profile,
    /// Run one seeded estimation trial.
    Estimate {
        /// Also emit the raw split-band profile and the full-band
        /// reconstruction built from the estimate.
        #[arg(long)]
        emit_profiles: bool,
    },
    /// Monte-Carlo RMSE sweep over SNR or band gap.
    Sweep {
        /// Override the configured trial count.
        #[arg(long)]
        trials: Option<usize>,
    },
}

fn load_config(cli: &Cli) -> Result<RunConfig> {
    let text = match (&cli.config, &cli.preset) {
        (Some(_), Some(_)) => {
            return Err(CliError::Config("use --config or --preset, not both".into()))
        }
        (Some(path), None) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?,
        (None, Some(name)) => presets::preset_text(name)
            .ok_or_else(|| {
                CliError::Config(format!(
                    "unknown preset '{name}' (available: {})",
                    presets::NAMES.join(", ")
                ))
            })?
            .to_string(),
        (None, None) => String::new(),
    };
    parse_config(&text)
}

fn run(cli: Cli) -> Result<()> {
    let mut cfg = load_config(&cli)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Runtime(format!("thread pool setup: {e}")))?;
    }
    let out = cli.out.clone().or_else(|| cfg.out.clone().map(PathBuf::from));
    match cli.command {
        Cmd::Psf => commands::cmd_psf(&cfg, out.as_deref()),
        Cmd::Profile => commands::cmd_profile(&cfg, out.as_deref()),
        Cmd::Estimate { emit_profiles } => {
            commands::cmd_estimate(&cfg, out.as_deref(), emit_profiles)
        }
        Cmd::Sweep { trials } => commands::cmd_sweep(&cfg, out.as_deref(), trials),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
