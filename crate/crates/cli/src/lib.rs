//! Configuration, orchestration and file formats behind the `gfbbm` binary.

pub mod config;
pub mod error;
pub mod output;
pub mod runs;

pub use config::{Mode, RunConfig, SeedSpec};
pub use error::CliError;
pub use output::{ResultManifest, SweepRow};
pub use runs::{
    run, run_evolve, run_reproduce, run_solve, run_sweep, run_validate, RunOptions, RunOutcome,
};
