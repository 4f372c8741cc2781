use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};

use pompeiu_cli::{config, corpus, run_corpus_cmd, run_probe, run_solve, run_validate};

/// Solver for nonlinear Cauchy-Riemann systems ∂^μ∂̄^ν u = a(z, u, …) on a
/// disk, with prescribed derivatives at the origin.
///
/// Thread count follows RAYON_NUM_THREADS.
#[derive(Parser)]
#[command(name = "pompeiu", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the problem described by a JSON config file.
    Solve {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run or list the built-in validation corpus.
    Corpus {
        /// List registered problems.
        #[arg(long, conflicts_with = "run")]
        list: bool,
        /// Run one registered problem by name.
        #[arg(long)]
        run: Option<String>,
        /// Override the problem's registered disk radius.
        #[arg(long)]
        radius: Option<f64>,
        /// Output directory (default: `out-<name>`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Execute a measured invariant suite and print pass/fail per check.
    Validate {
        /// all | operators | holder | solver
        #[arg(long, default_value = "all")]
        suite: String,
        /// Radial rings of the base operator grid.
        #[arg(long, default_value_t = 48)]
        n_r: usize,
        /// Angular nodes of the base operator grid.
        #[arg(long, default_value_t = 96)]
        n_theta: usize,
    },
    /// Contraction probe δ̂ for the configured problem.
    Probe {
        #[arg(long)]
        config: PathBuf,
    },
}

fn load(path: &PathBuf) -> Result<config::RunConfig> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    config::load_config(&text)
}

fn dispatch() -> Result<i32> {
    let cli = Cli::parse();
    match cli.command {
        Command::Solve { config } => {
            let cfg = match load(&config) {
                Ok(cfg) => cfg,
                Err(e) => {
                    eprintln!("config error: {e:#}");
                    return Ok(1);
                }
            };
            let outcome = run_solve(&cfg)?;
            println!(
                "status: {} ({} iterations, elapsed {:.2}s)",
                outcome.manifest.status,
                outcome.manifest.iterations.unwrap_or(0),
                outcome.manifest.elapsed_seconds
            );
            if let Some(err) = &outcome.manifest.error {
                eprintln!("{err}");
            }
            Ok(outcome.exit)
        }
        Command::Corpus {
            list,
            run,
            radius,
            out,
        } => {
            if list {
                for p in corpus::registry() {
                    println!(
                        "{:<20} R = {:<5} {}",
                        p.name, p.default_radius, p.description
                    );
                }
                return Ok(0);
            }
            let Some(name) = run else {
                eprintln!("corpus needs --list or --run <name>");
                return Ok(1);
            };
            if corpus::find(&name).is_none() {
                eprintln!("unknown corpus problem `{name}`");
                return Ok(1);
            }
            let out = out.unwrap_or_else(|| PathBuf::from(format!("out-{name}")));
            let outcome = run_corpus_cmd(&name, radius, &out)?;
            Ok(outcome.exit)
        }
        Command::Validate {
            suite,
            n_r,
            n_theta,
        } => run_validate(&suite, n_r, n_theta),
        Command::Probe { config } => {
            let cfg = match load(&config) {
                Ok(cfg) => cfg,
                Err(e) => {
                    eprintln!("config error: {e:#}");
                    return Ok(1);
                }
            };
            let outcome = run_probe(&cfg)?;
            Ok(outcome.exit)
        }
    }
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
