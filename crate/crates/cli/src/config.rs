//! Run configuration, read from strict TOML.
//!
//! ```toml
//! mode = "solve"                 # optional, must match the subcommand
//! output_dir = "out"
//! seed = "gaussian-default"      # or "file:initial.csv"
//!
//! [params]
//! alpha = 1.0
//! p = 1
//! c = 1.1
//!
//! [grid]
//! n_points = 65536
//! half_length = 2048.0
//! ```
//!
//! Optional sections: `[solver]`, `[time]` (evolve), `[sweep]` (sweep) and
//! `[validate]`. Unknown keys anywhere are errors.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use gfbbm::{EvolutionOptions, ModelParams, SolverConfig, SpectralGrid, TimeGrid};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Solve,
    Evolve,
    Sweep,
    Validate,
    Reproduce,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Mode::Solve => "solve",
            Mode::Evolve => "evolve",
            Mode::Sweep => "sweep",
            Mode::Validate => "validate",
            Mode::Reproduce => "reproduce",
        };
        f.write_str(name)
    }
}

/// Where the initial profile comes from.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum SeedSpec {
    #[default]
    GaussianDefault,
    File(PathBuf),
}

impl FromStr for SeedSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "gaussian-default" {
            Ok(SeedSpec::GaussianDefault)
        } else if let Some(path) = s.strip_prefix("file:") {
            if path.is_empty() {
                return Err("seed \"file:\" needs a path".into());
            }
            Ok(SeedSpec::File(PathBuf::from(path)))
        } else {
            Err(format!(
                "seed must be \"gaussian-default\" or \"file:<path>\", got {s:?}"
            ))
        }
    }
}

impl TryFrom<String> for SeedSpec {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<SeedSpec> for String {
    fn from(seed: SeedSpec) -> String {
        match seed {
            SeedSpec::GaussianDefault => "gaussian-default".into(),
            SeedSpec::File(p) => format!("file:{}", p.display()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub alpha: f64,
    pub p: u32,
    pub c: f64,
}

impl ParamsSection {
    pub fn to_params(self) -> Result<ModelParams, CliError> {
        ModelParams::new(self.alpha, self.p, self.c).map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSection {
    pub n_points: usize,
    pub half_length: f64,
    #[serde(default)]
    pub dealias: bool,
}

impl GridSection {
    pub fn build(&self) -> Result<SpectralGrid, CliError> {
        SpectralGrid::new(self.n_points, self.half_length)
            .and_then(|g| g.with_dealiasing(self.dealias))
            .map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolverSection {
    pub tol_increment: Option<f64>,
    pub tol_residual: Option<f64>,
    pub tol_factor: Option<f64>,
    pub max_iterations: Option<usize>,
    pub nu: Option<f64>,
}

impl SolverSection {
    pub fn build(&self, force: bool) -> Result<SolverConfig, CliError> {
        let d = SolverConfig::default();
        let config = SolverConfig {
            tol_increment: self.tol_increment.unwrap_or(d.tol_increment),
            tol_residual: self.tol_residual.unwrap_or(d.tol_residual),
            tol_factor: self.tol_factor.unwrap_or(d.tol_factor),
            max_iterations: self.max_iterations.unwrap_or(d.max_iterations),
            nu: self.nu,
            force,
        };
        config
            .validate()
            .map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(config)
    }
}

/// Exactly one of `dt` and `n_steps` must be given.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeSection {
    pub t_final: f64,
    pub dt: Option<f64>,
    pub n_steps: Option<usize>,
    /// Snapshot times; defaults to `[0, t_final]`.
    pub output_times: Option<Vec<f64>>,
    pub drift_stride: Option<usize>,
    pub divergence_factor: Option<f64>,
}

impl TimeSection {
    pub fn time_grid(&self) -> Result<TimeGrid, CliError> {
        let grid = match (self.dt, self.n_steps) {
            (Some(dt), None) => TimeGrid::with_step(self.t_final, dt),
            (None, Some(n)) => TimeGrid::new(self.t_final, n),
            _ => {
                return Err(CliError::Usage(
                    "[time] needs exactly one of dt and n_steps".into(),
                ))
            }
        };
        grid.map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn output_times(&self) -> Vec<f64> {
        match &self.output_times {
            Some(times) => times.clone(),
            None if self.t_final == 0.0 => vec![0.0],
            None => vec![0.0, self.t_final],
        }
    }

    pub fn options(&self) -> Result<EvolutionOptions, CliError> {
        let d = EvolutionOptions::default();
        let options = EvolutionOptions {
            drift_stride: self.drift_stride.unwrap_or(d.drift_stride),
            divergence_factor: self.divergence_factor.unwrap_or(d.divergence_factor),
        };
        if options.drift_stride == 0 {
            return Err(CliError::Usage("drift_stride must be at least 1".into()));
        }
        if !(options.divergence_factor > 1.0) {
            return Err(CliError::Usage("divergence_factor must exceed 1".into()));
        }
        Ok(options)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSection {
    pub alpha: Vec<f64>,
    pub p: Vec<u32>,
    pub c: Vec<f64>,
}

impl SweepSection {
    /// Cartesian product, sorted by `(alpha, p, c)` with duplicates removed.
    pub fn points(&self) -> Vec<ParamsSection> {
        let mut points = Vec::with_capacity(self.alpha.len() * self.p.len() * self.c.len());
        for &alpha in &self.alpha {
            for &p in &self.p {
                for &c in &self.c {
                    points.push(ParamsSection { alpha, p, c });
                }
            }
        }
        sort_points(&mut points);
        points
    }
}

pub fn sort_points(points: &mut Vec<ParamsSection>) {
    points.sort_by(|a, b| {
        a.alpha
            .total_cmp(&b.alpha)
            .then(a.p.cmp(&b.p))
            .then(a.c.total_cmp(&b.c))
    });
    points.dedup_by(|a, b| {
        a.alpha.to_bits() == b.alpha.to_bits() && a.p == b.p && a.c.to_bits() == b.c.to_bits()
    });
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateSection {
    pub points: Vec<ParamsSection>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Option<Mode>,
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub seed: SeedSpec,
    pub params: Option<ParamsSection>,
    pub grid: Option<GridSection>,
    pub solver: Option<SolverSection>,
    pub time: Option<TimeSection>,
    pub sweep: Option<SweepSection>,
    pub validate: Option<ValidateSection>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Usage(format!("invalid config: {e}")))
    }

    /// Reads a config file. A relative `file:` seed is resolved against the
    /// file's directory.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        let mut config =
            Self::parse(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        if let SeedSpec::File(seed) = &config.seed {
            if seed.is_relative() {
                let base = path.parent().unwrap_or(Path::new("."));
                config.seed = SeedSpec::File(base.join(seed));
            }
        }
        Ok(config)
    }

    /// Checks the `mode` key and the sections `mode` needs.
    pub fn check_for(&self, mode: Mode) -> Result<(), CliError> {
        if let Some(declared) = self.mode {
            if declared != mode {
                return Err(CliError::Usage(format!(
                    "config declares mode = \"{declared}\" but the command is {mode}"
                )));
            }
        }
        let missing =
            |section: &str| CliError::Usage(format!("mode {mode} needs a [{section}] section"));
        match mode {
            Mode::Solve => {
                self.params.ok_or_else(|| missing("params"))?;
                self.grid.ok_or_else(|| missing("grid"))?;
            }
            Mode::Evolve => {
                self.params.ok_or_else(|| missing("params"))?;
                self.grid.ok_or_else(|| missing("grid"))?;
                self.time.as_ref().ok_or_else(|| missing("time"))?;
            }
            Mode::Sweep => {
                self.grid.ok_or_else(|| missing("grid"))?;
                let sweep = self.sweep.as_ref().ok_or_else(|| missing("sweep"))?;
                if sweep.alpha.is_empty() || sweep.p.is_empty() || sweep.c.is_empty() {
                    return Err(CliError::Usage("[sweep] lists must be non-empty".into()));
                }
                if self.seed != SeedSpec::GaussianDefault {
                    return Err(CliError::Usage(
                        "sweep points always use the Gaussian seed".into(),
                    ));
                }
            }
            Mode::Validate | Mode::Reproduce => {}
        }
        Ok(())
    }
}
