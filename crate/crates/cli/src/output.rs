//! CSV formats and the result manifest.
//!
//! Every floating-point field is written with 17 significant digits so that
//! a value read back is bit-identical to the one written.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use gfbbm::{EvolutionTrace, IterationRecord, SpectralGrid, WaveProfile};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT_VERSION: &str = "1";
pub const MANIFEST_NAME: &str = "manifest.json";

pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn profile_csv(profile: &WaveProfile) -> String {
    let mut out = String::from("x,value\n");
    for (x, v) in profile.grid().nodes().iter().zip(profile.values()) {
        let _ = writeln!(out, "{},{}", fmt_f64(*x), fmt_f64(*v));
    }
    out
}

pub fn history_csv(history: &[IterationRecord]) -> String {
    let mut out = String::from("n,error,factor_error,res\n");
    for r in history {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.iteration,
            fmt_f64(r.increment_error),
            fmt_f64(r.factor_error),
            fmt_f64(r.residual_error)
        );
    }
    out
}

pub fn drift_csv(trace: &EvolutionTrace) -> String {
    let mut out = String::from("t,di0,di1\n");
    for ((t, d0), d1) in trace
        .drift_times
        .iter()
        .zip(&trace.i0_drift)
        .zip(&trace.i1_drift)
    {
        let _ = writeln!(out, "{},{},{}", fmt_f64(*t), fmt_f64(*d0), fmt_f64(*d1));
    }
    out
}

/// One row of a sweep table.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub alpha: f64,
    pub p: u32,
    pub c: f64,
    pub amplitude: f64,
    pub iterations: usize,
    pub final_res: f64,
    /// `ok`, `not_converged` or `failed`.
    pub status: String,
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("alpha,p,c,amplitude,iterations,final_res,status\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_f64(r.alpha),
            r.p,
            fmt_f64(r.c),
            fmt_f64(r.amplitude),
            r.iterations,
            fmt_f64(r.final_res),
            r.status
        );
    }
    out
}

/// Reads a sweep table back. Used by tests and the acceptance suite.
pub fn parse_sweep_csv(text: &str) -> Result<Vec<SweepRow>, CliError> {
    let bad = |line: usize| CliError::Usage(format!("malformed sweep row at line {line}"));
    let mut lines = text.lines();
    if lines.next() != Some("alpha,p,c,amplitude,iterations,final_res,status") {
        return Err(CliError::Usage("unexpected sweep header".into()));
    }
    lines
        .enumerate()
        .map(|(i, line)| {
            let f: Vec<&str> = line.split(',').collect();
            if f.len() != 7 {
                return Err(bad(i + 2));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad(i + 2));
            Ok(SweepRow {
                alpha: num(f[0])?,
                p: f[1].parse().map_err(|_| bad(i + 2))?,
                c: num(f[2])?,
                amplitude: num(f[3])?,
                iterations: f[4].parse().map_err(|_| bad(i + 2))?,
                final_res: num(f[5])?,
                status: f[6].to_string(),
            })
        })
        .collect()
}

/// Reads an `x,value` profile and checks that its abscissae are the nodes of
/// `grid`.
pub fn read_profile_csv(path: &Path, grid: &SpectralGrid) -> Result<WaveProfile, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read profile {}: {e}", path.display())))?;
    let bad = |msg: String| CliError::Usage(format!("{}: {msg}", path.display()));
    let mut lines = text.lines();
    match lines.next().map(str::trim) {
        Some("x,value") => {}
        other => return Err(bad(format!("expected header \"x,value\", found {other:?}"))),
    }
    let tol = 1e-9 * grid.half_length();
    let mut values = Vec::with_capacity(grid.n_points());
    for (i, line) in lines.filter(|l| !l.trim().is_empty()).enumerate() {
        let (x, v) = line
            .split_once(',')
            .ok_or_else(|| bad(format!("row {} has no comma", i + 2)))?;
        let parse = |s: &str| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| bad(format!("row {}: cannot parse {s:?}", i + 2)))
        };
        let (x, v) = (parse(x)?, parse(v)?);
        match grid.nodes().get(i) {
            Some(node) if (node - x).abs() <= tol => values.push(v),
            Some(node) => {
                return Err(bad(format!(
                    "row {}: x = {x} but grid node is {node}",
                    i + 2
                )))
            }
            None => return Err(bad(format!("more than {} rows", grid.n_points()))),
        }
    }
    if values.len() != grid.n_points() {
        return Err(bad(format!(
            "{} rows for a grid of {} points",
            values.len(),
            grid.n_points()
        )));
    }
    WaveProfile::new(grid, values).map_err(|e| bad(e.to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    pub path: String,
    pub role: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Versions {
    pub tool: String,
    pub format: String,
}

impl Default for Versions {
    fn default() -> Self {
        Self {
            tool: format!("gfbbm {}", env!("CARGO_PKG_VERSION")),
            format: FORMAT_VERSION.into(),
        }
    }
}

/// What a run did and what it wrote. Only `wallclock` varies between
/// identical runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultManifest {
    pub versions: Versions,
    pub mode: String,
    /// `ok`, `not_converged`, `aborted` or `failed`.
    pub status: String,
    pub config: serde_json::Value,
    pub artifacts: Vec<Artifact>,
    pub wallclock: BTreeMap<String, f64>,
    pub summary: serde_json::Value,
}

impl ResultManifest {
    pub fn new(mode: &str, config: serde_json::Value) -> Self {
        Self {
            versions: Versions::default(),
            mode: mode.into(),
            status: "ok".into(),
            config,
            artifacts: Vec::new(),
            wallclock: BTreeMap::new(),
            summary: serde_json::Value::Object(Default::default()),
        }
    }

    pub fn read(dir: &Path) -> Result<Self, CliError> {
        let path = dir.join(MANIFEST_NAME);
        let text = fs::read_to_string(&path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        if let serde_json::Value::Object(map) = &mut self.summary {
            map.insert(key.into(), serde_json::to_value(value).unwrap_or_default());
        }
    }

    pub fn artifact(&self, role: &str) -> Option<&Artifact> {
        self.artifacts.iter().find(|a| a.role == role)
    }
}

/// An output directory owned by one run. All writes happen on the calling
/// thread and are recorded for the manifest.
pub struct OutputDir {
    dir: PathBuf,
    artifacts: Vec<Artifact>,
}

impl OutputDir {
    /// Creates `dir` if needed. Files listed by a previous manifest in `dir`
    /// are removed; any other content makes the directory unusable.
    pub fn prepare(dir: &Path) -> Result<Self, CliError> {
        let io = |e: std::io::Error| CliError::Usage(format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        if dir.join(MANIFEST_NAME).is_file() {
            let old = ResultManifest::read(dir)?;
            for a in &old.artifacts {
                let name = Path::new(&a.path);
                if name.components().count() == 1 && dir.join(name).is_file() {
                    fs::remove_file(dir.join(name)).map_err(io)?;
                }
            }
        }
        let leftover: Vec<String> = fs::read_dir(dir)
            .map_err(io)?
            .filter_map(|e| e.ok())
            .map(|e| e.file_name().to_string_lossy().into_owned())
            .collect();
        if !leftover.is_empty() {
            return Err(CliError::Usage(format!(
                "output directory {} contains files not written by gfbbm: {}",
                dir.display(),
                leftover.join(", ")
            )));
        }
        Ok(Self {
            dir: dir.to_path_buf(),
            artifacts: Vec::new(),
        })
    }

    pub fn path(&self) -> &Path {
        &self.dir
    }

    pub fn write(&mut self, name: &str, role: &str, contents: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        fs::write(&path, contents)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        self.artifacts.push(Artifact {
            path: name.into(),
            role: role.into(),
        });
        Ok(())
    }

    /// Writes the manifest, which lists itself last.
    pub fn finish(mut self, mut manifest: ResultManifest) -> Result<ResultManifest, CliError> {
        self.artifacts.push(Artifact {
            path: MANIFEST_NAME.into(),
            role: "manifest".into(),
        });
        manifest.artifacts = self.artifacts;
        let text = serde_json::to_string_pretty(&manifest)
            .map_err(|e| CliError::Usage(format!("cannot serialize manifest: {e}")))?;
        let path = self.dir.join(MANIFEST_NAME);
        fs::write(&path, text + "\n")
            .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        Ok(manifest)
    }
}
