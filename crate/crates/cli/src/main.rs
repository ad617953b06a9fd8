//! Command-line driver: run the puncture experiments reproducibly and emit
//! JSON reports or lattice diagrams.
//!
//! Exit code 0 means every check in the invoked command passed; any failed
//! check, config error, or simulation error exits nonzero.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use toric_defects::experiments::{
    algebra_report, oracle_comparisons, run_braid, run_fusion, ExperimentConfig,
};
use toric_defects::render::{render_ascii, render_svg, snapshot_scene, Snapshot};

#[derive(Parser)]
#[command(
    name = "toric-defects",
    version,
    about = "Planar-code puncture simulator: fusion and braiding of mixed-boundary holes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the Z2 exchange relations and the Ising F/B matrices.
    CheckAlgebra {
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Negative control: flip one F-matrix sign; the checks must fail.
        #[arg(long)]
        tamper_f: bool,
    },
    /// Sample the regrouped fusion outcomes of the encoded quartet.
    RunFusion {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Master seed (overrides the config).
        #[arg(long)]
        seed: Option<u64>,
        /// Number of shots (overrides the config).
        #[arg(long)]
        shots: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Braid punctures on both encoded basis states, with controls.
    RunBraid {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also compare lattice branch signs against the amplitude oracle
        /// for every defined exchange.
        #[arg(long)]
        oracle: bool,
    },
    /// Draw a lattice snapshot of the experiment pipeline.
    Render {
        #[arg(long)]
        config: Option<PathBuf>,
        /// One of: empty, quartet, prepared, braided, fused.
        #[arg(long)]
        snapshot: String,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

fn load_config(path: &Option<PathBuf>) -> Result<ExperimentConfig> {
    match path {
        None => Ok(ExperimentConfig::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .with_context(|| format!("reading config {}", p.display()))?;
            ExperimentConfig::from_json(&text)
                .with_context(|| format!("parsing config {}", p.display()))
        }
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::CheckAlgebra { out, tamper_f } => {
            let report = algebra_report(tamper_f);
            emit(&out, &format!("{}\n", serde_json::to_string_pretty(&report)?))?;
            Ok(report.all_pass)
        }
        Command::RunFusion { config, seed, shots, out } => {
            let mut cfg = load_config(&config)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            if let Some(shots) = shots {
                cfg.shots = shots;
            }
            let report = run_fusion(&cfg)?;
            emit(&out, &format!("{}\n", serde_json::to_string_pretty(&report)?))?;
            Ok(report.all_pass)
        }
        Command::RunBraid { config, seed, out, oracle } => {
            let mut cfg = load_config(&config)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let report = run_braid(&cfg)?;
            let mut pass = report.all_pass;
            let mut json = serde_json::to_value(&report)?;
            if oracle {
                let comparisons = oracle_comparisons(&cfg)?;
                pass &= comparisons.iter().all(|c| c.pass);
                json.as_object_mut()
                    .unwrap()
                    .insert("oracle".into(), serde_json::to_value(&comparisons)?);
            }
            emit(&out, &format!("{}\n", serde_json::to_string_pretty(&json)?))?;
            Ok(pass)
        }
        Command::Render { config, snapshot, format, out, seed } => {
            let mut cfg = load_config(&config)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let snap: Snapshot = snapshot.parse().map_err(anyhow::Error::msg)?;
            let scene = snapshot_scene(&cfg, snap)?;
            let content = match format {
                Format::Ascii => render_ascii(&scene),
                Format::Svg => render_svg(&scene),
            };
            emit(&out, &content)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("one or more checks failed");
            ExitCode::FAILURE
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}
