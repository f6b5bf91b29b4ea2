//! `rskp`: verification suites, convergence studies and point evaluations
//! for RSK shape statistics and their Painleve-type limits.

mod config;
mod eval;
mod output;
mod study;
mod verify;

use anyhow::Context;
use clap::{Parser, Subcommand};
use config::{config_error, ConfigError, Params, RunConfig};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "rskp", version, about = "Exact RSK statistics, tau functions and Painleve residual checks")]
struct Cli {
    /// working precision in decimal digits
    #[arg(long, global = true, env = "RSKP_PRECISION", default_value_t = 60)]
    precision: u32,
    /// directory for JSON, CSV and summary files
    #[arg(long, global = true, default_value = "reports")]
    out: PathBuf,
    /// cap on worker threads
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// seed for the optional Monte Carlo cross-check of word studies
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an invariant suite: combinatorics, measures, tau, painleve, asymptotics or all
    Verify {
        suite: String,
        #[command(flatten)]
        params: Params,
    },
    /// Convergence study: theorem12, corollary13, theorem14, scaling or prop51
    Study {
        study: String,
        #[command(flatten)]
        params: Params,
    },
    /// Print values: tau, g, h, k, moment, hermitian-ratio, measure or chi2-moment
    Eval {
        quantity: String,
        #[command(flatten)]
        params: Params,
    },
    /// Re-run the configuration embedded in a report (or a bare config file)
    Replay { report: PathBuf },
}

fn dispatch(config: &RunConfig) -> anyhow::Result<bool> {
    match config.command.as_str() {
        "verify" => verify::run(config),
        "study" => study::run(config),
        "eval" => eval::run(config),
        other => Err(config_error(format!("unknown command {other:?}"))),
    }
}

fn load_config(path: &PathBuf) -> anyhow::Result<RunConfig> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(config_error)?;
    let inner = value.get("config").cloned().unwrap_or(value);
    serde_json::from_value(inner).map_err(config_error)
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let make = |command: &str, target: String, params: Params| RunConfig {
        command: command.into(),
        target,
        digits: cli.precision,
        out: cli.out.clone(),
        jobs: cli.jobs,
        seed: cli.seed,
        params,
    };
    let config = match cli.command {
        Command::Verify { ref suite, ref params } => make("verify", suite.clone(), params.clone()),
        Command::Study { ref study, ref params } => make("study", study.clone(), params.clone()),
        Command::Eval { ref quantity, ref params } => make("eval", quantity.clone(), params.clone()),
        Command::Replay { ref report } => load_config(report)?,
    };
    if config.digits < 8 {
        return Err(config_error(format!("constraint violated: precision >= 8 digits (got {})", config.digits)));
    }
    if let Some(jobs) = config.jobs {
        if jobs == 0 {
            return Err(config_error("constraint violated: jobs >= 1"));
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global().context("configuring the worker pool")?;
    }
    dispatch(&config)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<ConfigError>().is_some() => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
