use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gfbbm_cli::config::ParamsSection;
use gfbbm_cli::runs::FIGURES;
use gfbbm_cli::{run, run_reproduce, CliError, Mode, RunConfig, RunOptions, RunOutcome};

/// Solitary waves of the generalized fractional BBM equation.
#[derive(Parser)]
#[command(name = "gfbbm", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// TOML run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (overrides `output_dir` in the config).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Run even when the parameters admit no positive solitary wave.
    #[arg(long, global = true)]
    force: bool,

    /// reproduce: use N = 2^18 instead of 2^16.
    #[arg(long, global = true)]
    full: bool,

    /// Worker threads for sweeps (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a solitary-wave profile by Petviashvili iteration.
    Solve,
    /// Evolve a profile in time with the pseudo-spectral RK4 scheme.
    Evolve,
    /// Solve over a grid of (alpha, p, c) and tabulate amplitudes.
    Sweep,
    /// Report which parameter triples admit positive solitary waves.
    Validate {
        /// A triple `alpha,p,c`; may be repeated.
        #[arg(long = "point", value_parser = parse_point)]
        points: Vec<ParamsSection>,
        /// Print JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Regenerate the data behind one of the figures.
    Reproduce {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(FIGURES))]
        figure: String,
    },
}

fn parse_point(s: &str) -> Result<ParamsSection, String> {
    let fields: Vec<&str> = s.split(',').map(str::trim).collect();
    if let [alpha, p, c] = fields[..] {
        let bad = |what: &str| format!("cannot parse {what} in {s:?}");
        Ok(ParamsSection {
            alpha: alpha.parse().map_err(|_| bad("alpha"))?,
            p: p.parse().map_err(|_| bad("p"))?,
            c: c.parse().map_err(|_| bad("c"))?,
        })
    } else {
        Err(format!("expected alpha,p,c but got {s:?}"))
    }
}

fn execute(cli: Cli) -> Result<RunOutcome, CliError> {
    let mut opts = RunOptions {
        out: cli.out,
        force: cli.force,
        full: cli.full,
        workers: cli.workers,
        ..RunOptions::default()
    };
    let mode = match cli.command {
        Command::Reproduce { figure } => {
            if cli.config.is_some() {
                return Err(CliError::Usage("reproduce does not read a config".into()));
            }
            return run_reproduce(&figure, &opts);
        }
        Command::Solve => Mode::Solve,
        Command::Evolve => Mode::Evolve,
        Command::Sweep => Mode::Sweep,
        Command::Validate { points, json } => {
            opts.points = points;
            opts.json = json;
            Mode::Validate
        }
    };
    let config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None if mode == Mode::Validate => RunConfig::default(),
        None => return Err(CliError::Usage(format!("{mode} needs --config <path>"))),
    };
    run(mode, &config, &opts)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let quiet = matches!(cli.command, Command::Validate { .. });
    match execute(cli) {
        Ok(outcome) => {
            if let Some(msg) = &outcome.failure {
                eprintln!("error: {msg}");
            }
            if !quiet || outcome.manifest.artifacts.len() > 1 {
                eprintln!(
                    "{}: {} ({} files)",
                    outcome.manifest.mode,
                    outcome.manifest.status,
                    outcome.manifest.artifacts.len()
                );
            }
            ExitCode::from(outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
