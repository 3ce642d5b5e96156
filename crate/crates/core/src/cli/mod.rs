//! Experiment runner: parses a TOML config, runs one named experiment and
//! writes one CSV per table plus `summary.json`.

mod config;
mod experiments;
mod report;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde::Serialize;

pub use config::{Experiment, ExperimentConfig};
pub use experiments::{
    cell_batch, cell_distributions, cell_moments, gain_sweep, meta, model_name, monotonicity, oned_appendix,
    ordered_radii, path_loss, run_experiment, serving_signal, shadowing_laws, zero_cell_joint, KS_LIMIT,
    LATTICE_KS_LIMIT,
};
pub use report::{write_atomically, NamedEstimate, Report, Table, Value, Verdict};

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Exit status for unreadable, malformed or invalid configuration.
pub const EXIT_CONFIG: i32 = 1;
/// Exit status for numerical or I/O failures during a run.
pub const EXIT_RUNTIME: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "jsp-sim",
    version,
    about = "Poisson Voronoi directional radii and JSP cellular network experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run the experiment described by a TOML config file.
    Run {
        config: PathBuf,
        /// Override the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Override the number of replicates.
        #[arg(long)]
        replicates: Option<u64>,
        /// Override the output directory.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the experiment catalog as JSON.
    List,
}

/// One entry of the experiment catalog.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub anchor: &'static str,
}

pub fn catalog() -> Vec<CatalogEntry> {
    Experiment::ALL
        .iter()
        .map(|e| CatalogEntry {
            name: e.name(),
            description: e.description(),
            anchor: e.anchor(),
        })
        .collect()
}

#[derive(Debug, Serialize)]
struct TableEntry<'a> {
    name: &'a str,
    file: String,
    rows: usize,
}

#[derive(Debug, Serialize)]
struct Summary<'a> {
    experiment: &'static str,
    anchor: &'static str,
    seed: u64,
    parameters: &'a ExperimentConfig,
    runtime_seconds: f64,
    discarded: u64,
    all_pass: bool,
    estimates: &'a [NamedEstimate],
    verdicts: &'a [Verdict],
    tables: Vec<TableEntry<'a>>,
}

/// Failure of a CLI invocation, carrying its exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    fn runtime(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_RUNTIME,
            message: message.into(),
        }
    }
}

/// Loads a config file and applies command-line overrides.
pub fn load_config(
    path: &Path,
    seed: Option<u64>,
    replicates: Option<u64>,
    out: Option<PathBuf>,
) -> Result<ExperimentConfig, Failure> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Failure::config(format!("cannot read {}: {e}", path.display())))?;
    let mut cfg =
        ExperimentConfig::from_toml(&text).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
    if let Some(s) = seed {
        cfg.seed = s;
    }
    if let Some(n) = replicates {
        cfg.replicates = n;
    }
    if out.is_some() {
        cfg.output_dir = out;
    }
    cfg.validate().map_err(Failure::config)?;
    Ok(cfg)
}

/// Runs an experiment and writes its artifacts; returns the report.
pub fn run_to_dir(cfg: &ExperimentConfig) -> Result<Report, Failure> {
    let out = cfg.output_dir();
    if out.exists() && !out.join("summary.json").exists() {
        return Err(Failure::config(format!(
            "output_dir: {} exists and does not hold a previous run; refusing to replace it",
            out.display()
        )));
    }
    let start = Instant::now();
    let report = run_experiment(cfg).map_err(|e| Failure::runtime(format!("experiment {}: {e}", cfg.experiment)))?;
    let runtime = start.elapsed().as_secs_f64();
    let mut files = Vec::new();
    for t in &report.tables {
        let bytes = t
            .to_csv(cfg.seed)
            .map_err(|e| Failure::runtime(format!("table {}: {e}", t.name)))?;
        files.push((format!("{}.csv", t.name), bytes));
    }
    let summary = Summary {
        experiment: cfg.experiment.name(),
        anchor: cfg.experiment.anchor(),
        seed: cfg.seed,
        parameters: cfg,
        runtime_seconds: runtime,
        discarded: report.discarded,
        all_pass: report.all_pass(),
        estimates: &report.estimates,
        verdicts: &report.verdicts,
        tables: report
            .tables
            .iter()
            .map(|t| TableEntry {
                name: &t.name,
                file: format!("{}.csv", t.name),
                rows: t.rows.len(),
            })
            .collect(),
    };
    let json = serde_json::to_vec_pretty(&summary).map_err(|e| Failure::runtime(format!("summary: {e}")))?;
    files.push(("summary.json".into(), json));
    write_atomically(&out, &files).map_err(|e| Failure::runtime(format!("writing {}: {e}", out.display())))?;
    Ok(report)
}

/// Entry point of the binary; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let result = match cli.command {
        Command::List => match serde_json::to_string_pretty(&catalog()) {
            Ok(s) => {
                // A closed pipe (e.g. `| head`) is not an error.
                let _ = writeln!(std::io::stdout(), "{s}");
                Ok(())
            }
            Err(e) => Err(Failure::runtime(e.to_string())),
        },
        Command::Run {
            config,
            seed,
            replicates,
            out,
        } => load_config(&config, seed, replicates, out).and_then(|cfg| {
            let report = run_to_dir(&cfg)?;
            let mut stdout = std::io::stdout().lock();
            for v in &report.verdicts {
                let status = if v.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(stdout, "{status} {} (observed {})", v.check, v.observed);
            }
            let _ = writeln!(stdout, "wrote {}", cfg.output_dir().display());
            Ok(())
        }),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}
