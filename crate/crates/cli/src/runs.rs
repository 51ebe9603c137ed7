//! The five commands. Each returns the manifest it wrote; numerical failures
//! still write what was computed and are reported through
//! [`RunOutcome::failure`].

use std::path::{Path, PathBuf};
use std::time::Instant;

use gfbbm::{
    default_seed, energy_identity_check, evolve, exact_soliton_profile, forward_transform,
    inverse_transform, pohozaev_check, solve, validate_params, AdmissibilityReport, Error,
    EvolutionOptions, EvolutionTrace, ModelParams, SolverConfig, SolverResult, SpectralGrid,
    TimeGrid, WaveProfile,
};
use num_complex::Complex64;
use rayon::prelude::*;
use serde_json::json;

use crate::config::{GridSection, Mode, ParamsSection, RunConfig, SeedSpec, SolverSection};
use crate::error::CliError;
use crate::output::{
    drift_csv, fmt_f64, history_csv, profile_csv, read_profile_csv, sweep_csv, OutputDir,
    ResultManifest, SweepRow,
};

pub const DEFAULT_OUTPUT_DIR: &str = "gfbbm-out";

/// Identity checks above this relative defect are reported as warnings.
const IDENTITY_WARN: f64 = 1e-3;

/// Command-line switches shared by all commands.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    pub out: Option<PathBuf>,
    pub force: bool,
    pub full: bool,
    pub workers: Option<usize>,
    /// `validate` only: print JSON instead of text.
    pub json: bool,
    /// `validate` only: extra triples from the command line.
    pub points: Vec<ParamsSection>,
}

#[derive(Clone, Debug)]
pub struct RunOutcome {
    pub manifest: ResultManifest,
    /// Set when the numerics failed; the exit code is then 1.
    pub failure: Option<String>,
}

impl RunOutcome {
    pub fn exit_code(&self) -> i32 {
        if self.failure.is_some() {
            1
        } else {
            0
        }
    }
}

pub fn run(mode: Mode, config: &RunConfig, opts: &RunOptions) -> Result<RunOutcome, CliError> {
    match mode {
        Mode::Solve => run_solve(config, opts),
        Mode::Evolve => run_evolve(config, opts),
        Mode::Sweep => run_sweep(config, opts),
        Mode::Validate => run_validate(config, opts),
        Mode::Reproduce => Err(CliError::Usage(
            "reproduce takes a figure id, not a config".into(),
        )),
    }
}

fn output_dir(config: &RunConfig, opts: &RunOptions) -> PathBuf {
    opts.out
        .clone()
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR))
}

fn echo(config: &RunConfig, out: &Path, opts: &RunOptions) -> serde_json::Value {
    let mut resolved = config.clone();
    resolved.output_dir = Some(out.to_path_buf());
    let mut value = serde_json::to_value(&resolved).unwrap_or_default();
    if let serde_json::Value::Object(map) = &mut value {
        map.insert("force".into(), opts.force.into());
    }
    value
}

fn reject_full(opts: &RunOptions) -> Result<(), CliError> {
    if opts.full {
        return Err(CliError::Usage("--full only applies to reproduce".into()));
    }
    Ok(())
}

fn pool(workers: Option<usize>) -> Result<rayon::ThreadPool, CliError> {
    if workers == Some(0) {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start worker pool: {e}")))
}

fn admissibility(params: &ModelParams, force: bool) -> Result<AdmissibilityReport, CliError> {
    let report = validate_params(params)?;
    if !report.admissible {
        if !force {
            return Err(CliError::Usage(format!(
                "no positive solitary wave for {params}: {report} (--force runs anyway)"
            )));
        }
        eprintln!("warning: forcing inadmissible parameters {params}: {report}");
    }
    Ok(report)
}

fn initial_profile(
    seed: &SeedSpec,
    grid: &SpectralGrid,
    params: &ModelParams,
) -> Result<WaveProfile, CliError> {
    match seed {
        SeedSpec::GaussianDefault => Ok(default_seed(grid, params)?),
        SeedSpec::File(path) => read_profile_csv(path, grid),
    }
}

/// A solve that ran. `result` is `None` when the iteration broke down.
struct Solved {
    result: Option<SolverResult>,
    failure: Option<String>,
    seconds: f64,
}

fn run_solver(
    initial: &WaveProfile,
    params: &ModelParams,
    config: &SolverConfig,
) -> Result<Solved, CliError> {
    let start = Instant::now();
    let (result, failure) = match solve(initial, params, config) {
        Ok(r) if r.converged => (Some(r), None),
        Ok(r) => {
            let msg = format!(
                "{params}: no convergence within {} iterations",
                r.iterations_used
            );
            (Some(r), Some(msg))
        }
        Err(e) if e.is_numerical_failure() => (None, Some(format!("{params}: {e}"))),
        Err(e) => return Err(e.into()),
    };
    Ok(Solved {
        result,
        failure,
        seconds: start.elapsed().as_secs_f64(),
    })
}

fn status_of(solved: &Solved) -> &'static str {
    match (&solved.result, &solved.failure) {
        (_, None) => "ok",
        (Some(_), Some(_)) => "not_converged",
        (None, Some(_)) => "failed",
    }
}

fn solution_summary(r: &SolverResult, params: &ModelParams) -> serde_json::Value {
    let last = r.last();
    let pohozaev = pohozaev_check(&r.profile, params).ok();
    let energy = energy_identity_check(&r.profile, params).ok();
    for (name, defect) in [("Pohozaev", pohozaev), ("energy", energy)] {
        if let Some(d) = defect.filter(|d| *d > IDENTITY_WARN) {
            eprintln!(
                "warning: {params}: profile fails the {name} identity (relative defect {d:.3e})"
            );
        }
    }
    // Size of the wave at x = ±L relative to its peak: how much of the
    // algebraic tail the periodic domain cuts off.
    let boundary_ratio = r.profile.values()[0].abs() / r.profile.sup_norm().max(f64::MIN_POSITIVE);
    json!({
        "converged": r.converged,
        "iterations": r.iterations_used,
        "amplitude": r.profile.max_value(),
        "final_error": last.map(|l| l.increment_error),
        "final_factor_error": last.map(|l| l.factor_error),
        "final_res": last.map(|l| l.residual_error),
        "pohozaev_defect": pohozaev,
        "energy_defect": energy,
        "boundary_to_peak": boundary_ratio,
    })
}

/// Pointwise difference against the closed form, when one exists.
fn exact_difference(profile: &WaveProfile, params: &ModelParams, t: f64) -> Option<WaveProfile> {
    if params.alpha != 1.0 || params.p != 1 {
        return None;
    }
    let exact = exact_soliton_profile(profile.grid(), t, params.speed).ok()?;
    profile.zip_with(&exact, |a, b| a - b).ok()
}

fn grid_summary(grid: &SpectralGrid) -> serde_json::Value {
    json!({
        "n_points": grid.n_points(),
        "half_length": grid.half_length(),
        "spacing": grid.spacing(),
        "dealias": grid.dealias(),
    })
}

fn finish(
    out: OutputDir,
    mut manifest: ResultManifest,
    failure: Option<String>,
) -> Result<RunOutcome, CliError> {
    if let Some(msg) = &failure {
        manifest.set("failure", msg);
    }
    Ok(RunOutcome {
        manifest: out.finish(manifest)?,
        failure,
    })
}

pub fn run_solve(config: &RunConfig, opts: &RunOptions) -> Result<RunOutcome, CliError> {
    config.check_for(Mode::Solve)?;
    reject_full(opts)?;
    let params = config
        .params
        .unwrap_or_else(|| unreachable!())
        .to_params()?;
    let grid = config.grid.unwrap_or_else(|| unreachable!()).build()?;
    let solver = config.solver.unwrap_or_default().build(opts.force)?;
    let report = admissibility(&params, opts.force)?;
    let initial = initial_profile(&config.seed, &grid, &params)?;

    let dir = output_dir(config, opts);
    let mut out = OutputDir::prepare(&dir)?;
    let mut manifest = ResultManifest::new("solve", echo(config, &dir, opts));
    manifest.set("admissibility", report.to_string());
    manifest.set("grid", grid_summary(&grid));

    let solved = run_solver(&initial, &params, &solver)?;
    manifest.wallclock.insert("solve".into(), solved.seconds);
    manifest.status = status_of(&solved).into();
    if let Some(r) = &solved.result {
        out.write("profile.csv", "profile", &profile_csv(&r.profile))?;
        out.write("history.csv", "history", &history_csv(&r.history))?;
        if let Some(diff) = exact_difference(&r.profile, &params, 0.0) {
            out.write("difference.csv", "difference", &profile_csv(&diff))?;
            manifest.set("max_abs_difference", diff.sup_norm());
        }
        manifest.set("solution", solution_summary(r, &params));
    }
    finish(out, manifest, solved.failure)
}

/// Translates a profile by `distance` (periodically) with a Fourier phase.
fn translate(profile: &WaveProfile, distance: f64) -> Result<WaveProfile, Error> {
    let shifted = forward_transform(profile)
        .multiplied(|kappa| Complex64::from_polar(1.0, -kappa * distance));
    inverse_transform(&shifted)
}

fn time_label(t: f64) -> String {
    let s = format!("{t:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() || s == "-" {
        "0".into()
    } else {
        s.to_string()
    }
}

/// Writes snapshots and drift, and summarizes transport and conservation.
fn write_trace(
    out: &mut OutputDir,
    manifest: &mut ResultManifest,
    prefix: &str,
    trace: &EvolutionTrace,
    initial: &WaveProfile,
    params: &ModelParams,
) -> Result<(), CliError> {
    let mut written: Vec<f64> = Vec::new();
    let mut transport = Vec::new();
    for (&t, snap) in trace.snapshot_times.iter().zip(&trace.snapshots) {
        if written.contains(&t) {
            continue;
        }
        written.push(t);
        let name = format!("{prefix}snapshot_t{}.csv", time_label(t));
        out.write(&name, "snapshot", &profile_csv(snap))?;
        let moved = translate(initial, params.speed * t)?;
        let err = snap.distance_sup(&moved)? / initial.sup_norm().max(f64::MIN_POSITIVE);
        transport.push(json!({ "t": t, "relative_sup_error": err }));
        if let Some(diff) = exact_difference(snap, params, t) {
            manifest.set(
                &format!("max_abs_difference_exact_t{}", time_label(t)),
                diff.sup_norm(),
            );
        }
    }
    out.write(&format!("{prefix}drift.csv"), "drift", &drift_csv(trace))?;
    manifest.set("snapshot_times", &written);
    manifest.set("transport_vs_translated_initial", transport);
    manifest.set("max_abs_di0", trace.max_abs_i0_drift());
    manifest.set("max_abs_di1", trace.max_abs_i1_drift());
    manifest.set(
        "initial_invariants",
        json!({
            "i0": trace.initial.i0,
            "i1": trace.initial.i1,
            "hamiltonian": trace.initial.hamiltonian,
        }),
    );
    Ok(())
}

/// Runs the stepper and writes its outputs. Returns the failure, if any.
#[allow(clippy::too_many_arguments)]
fn evolve_and_write(
    out: &mut OutputDir,
    manifest: &mut ResultManifest,
    prefix: &str,
    initial: &WaveProfile,
    params: &ModelParams,
    time: &TimeGrid,
    output_times: &[f64],
    options: &EvolutionOptions,
) -> Result<Option<String>, CliError> {
    let start = Instant::now();
    let outcome = evolve(initial, params, time, output_times, options);
    manifest
        .wallclock
        .insert(format!("{prefix}evolve"), start.elapsed().as_secs_f64());
    match outcome {
        Ok(trace) => {
            write_trace(out, manifest, prefix, &trace, initial, params)?;
            Ok(None)
        }
        Err(Error::EvolutionAborted {
            step,
            reason,
            partial,
        }) => {
            write_trace(out, manifest, prefix, &partial, initial, params)?;
            manifest.status = "aborted".into();
            manifest.set("aborted_at_step", step);
            Ok(Some(format!(
                "{params}: evolution aborted at step {step}: {reason}"
            )))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn run_evolve(config: &RunConfig, opts: &RunOptions) -> Result<RunOutcome, CliError> {
    config.check_for(Mode::Evolve)?;
    reject_full(opts)?;
    let params = config
        .params
        .unwrap_or_else(|| unreachable!())
        .to_params()?;
    let grid = config.grid.unwrap_or_else(|| unreachable!()).build()?;
    let time_section = config.time.as_ref().unwrap_or_else(|| unreachable!());
    let time = time_section.time_grid()?;
    let output_times = time_section.output_times();
    if let Some(t) = output_times
        .iter()
        .find(|&&t| !(t >= 0.0 && t <= time.t_final))
    {
        return Err(CliError::Usage(format!(
            "output time {t} lies outside [0, {}]",
            time.t_final
        )));
    }
    let options = time_section.options()?;
    let solver = config.solver.unwrap_or_default().build(opts.force)?;
    let report = admissibility(&params, opts.force)?;

    let dir = output_dir(config, opts);
    let mut manifest = ResultManifest::new("evolve", echo(config, &dir, opts));
    manifest.set("admissibility", report.to_string());
    manifest.set("grid", grid_summary(&grid));
    manifest.set("dt", time.dt);
    manifest.set("n_steps", time.n_steps);

    let (mut out, initial) = match &config.seed {
        SeedSpec::File(path) => {
            let q = read_profile_csv(path, &grid)?;
            (OutputDir::prepare(&dir)?, q)
        }
        SeedSpec::GaussianDefault => {
            let seed = default_seed(&grid, &params)?;
            let mut out = OutputDir::prepare(&dir)?;
            let solved = run_solver(&seed, &params, &solver)?;
            manifest.wallclock.insert("solve".into(), solved.seconds);
            if let Some(r) = &solved.result {
                out.write(
                    "initial_profile.csv",
                    "initial_profile",
                    &profile_csv(&r.profile),
                )?;
                out.write("initial_history.csv", "history", &history_csv(&r.history))?;
                manifest.set("solution", solution_summary(r, &params));
            }
            match (solved.result, solved.failure) {
                (Some(r), None) => (out, r.profile),
                (_, failure) => {
                    manifest.status = "failed".into();
                    return finish(out, manifest, failure);
                }
            }
        }
    };
    let failure = evolve_and_write(
        &mut out,
        &mut manifest,
        "",
        &initial,
        &params,
        &time,
        &output_times,
        &options,
    )?;
    finish(out, manifest, failure)
}

fn sweep_point(grid: &SpectralGrid, params: &ModelParams, solver: &SolverConfig) -> SweepRow {
    let mut row = SweepRow {
        alpha: params.alpha,
        p: params.p,
        c: params.speed,
        amplitude: f64::NAN,
        iterations: 0,
        final_res: f64::NAN,
        status: "failed".into(),
    };
    let solved = default_seed(grid, params)
        .map_err(CliError::from)
        .and_then(|seed| run_solver(&seed, params, solver));
    if let Ok(solved) = solved {
        row.status = status_of(&solved).into();
        if let Some(r) = solved.result {
            row.amplitude = r.profile.max_value();
            row.iterations = r.iterations_used;
            row.final_res = r.last().map_or(f64::NAN, |l| l.residual_error);
        }
    }
    row
}

/// Solves every point on the pool; rows come back in input order.
fn sweep_rows(
    points: &[ModelParams],
    grid: &SpectralGrid,
    solver: &SolverConfig,
    workers: Option<usize>,
) -> Result<Vec<SweepRow>, CliError> {
    let pool = pool(workers)?;
    Ok(pool.install(|| {
        points
            .par_iter()
            .map(|params| sweep_point(grid, params, solver))
            .collect()
    }))
}

fn sweep_failure(rows: &[SweepRow]) -> Option<String> {
    let bad = rows.iter().filter(|r| r.status != "ok").count();
    (bad > 0).then(|| format!("{bad} of {} sweep points did not converge", rows.len()))
}

pub fn run_sweep(config: &RunConfig, opts: &RunOptions) -> Result<RunOutcome, CliError> {
    config.check_for(Mode::Sweep)?;
    reject_full(opts)?;
    let grid = config.grid.unwrap_or_else(|| unreachable!()).build()?;
    let solver = config.solver.unwrap_or_default().build(opts.force)?;
    let points = config
        .sweep
        .as_ref()
        .unwrap_or_else(|| unreachable!())
        .points();

    let mut run_points = Vec::new();
    let mut skipped = String::from("alpha,p,c,findings\n");
    let mut n_skipped = 0;
    for point in &points {
        let params = point.to_params()?;
        let report = validate_params(&params)?;
        if report.admissible || opts.force {
            run_points.push(params);
        } else {
            n_skipped += 1;
            let tags: Vec<&str> = report.reasons.iter().map(|r| r.tag()).collect();
            skipped.push_str(&format!(
                "{},{},{},{}\n",
                fmt_f64(point.alpha),
                point.p,
                fmt_f64(point.c),
                tags.join(";")
            ));
        }
    }
    if run_points.is_empty() {
        eprintln!("warning: no admissible sweep points; the table is empty");
    }

    let dir = output_dir(config, opts);
    let mut out = OutputDir::prepare(&dir)?;
    let mut manifest = ResultManifest::new("sweep", echo(config, &dir, opts));
    manifest.set("grid", grid_summary(&grid));
    let start = Instant::now();
    let rows = sweep_rows(&run_points, &grid, &solver, opts.workers)?;
    manifest
        .wallclock
        .insert("sweep".into(), start.elapsed().as_secs_f64());
    out.write("sweep.csv", "sweep", &sweep_csv(&rows))?;
    out.write("sweep_skipped.csv", "skipped", &skipped)?;
    manifest.set("points_run", rows.len());
    manifest.set("points_skipped", n_skipped);
    let failure = sweep_failure(&rows);
    if failure.is_some() {
        manifest.status = "not_converged".into();
    }
    finish(out, manifest, failure)
}

fn report_json(point: &ParamsSection, report: &AdmissibilityReport) -> serde_json::Value {
    json!({
        "alpha": point.alpha,
        "p": point.p,
        "c": point.c,
        "admissible": report.admissible,
        "findings": report.reasons.iter().map(|r| r.tag()).collect::<Vec<_>>(),
        "p_max": report.p_max.is_finite().then_some(report.p_max),
    })
}

/// Prints the admissibility report of every requested triple. Files are
/// written only when an output directory is configured.
pub fn run_validate(config: &RunConfig, opts: &RunOptions) -> Result<RunOutcome, CliError> {
    config.check_for(Mode::Validate)?;
    reject_full(opts)?;
    let mut points: Vec<ParamsSection> = Vec::new();
    points.extend(config.params);
    if let Some(v) = &config.validate {
        points.extend(v.points.iter().copied());
    }
    points.extend(opts.points.iter().copied());
    if points.is_empty() {
        return Err(CliError::Usage(
            "nothing to validate: give [params], [validate] points or --point".into(),
        ));
    }
    let mut reports = Vec::with_capacity(points.len());
    for point in &points {
        let report = validate_params(&point.to_params()?)?;
        reports.push(report_json(point, &report));
        if !opts.json {
            let verdict = if report.admissible {
                "admissible"
            } else {
                "inadmissible"
            };
            println!(
                "alpha={} p={} c={}: {report} ({verdict})",
                point.alpha, point.p, point.c
            );
        }
    }
    let reports = serde_json::Value::Array(reports);
    if opts.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&reports).unwrap_or_default()
        );
    }

    let dir = opts.out.clone().or_else(|| config.output_dir.clone());
    let mut manifest = ResultManifest::new(
        "validate",
        echo(config, dir.as_deref().unwrap_or(Path::new("")), opts),
    );
    manifest.set("reports", &reports);
    match dir {
        Some(dir) => {
            let mut out = OutputDir::prepare(&dir)?;
            let text = serde_json::to_string_pretty(&reports).unwrap_or_default() + "\n";
            out.write("validation.json", "validation", &text)?;
            finish(out, manifest, None)
        }
        None => Ok(RunOutcome {
            manifest,
            failure: None,
        }),
    }
}

pub const FIGURES: [&str; 7] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7"];

/// Speeds `1.05, 1.10, …, 2.00`.
pub fn figure5_speeds() -> Vec<f64> {
    (0..20).map(|k| (105 + 5 * k) as f64 / 100.0).collect()
}

fn label(v: f64) -> String {
    format!("{v:?}")
}

/// Regenerates the data behind one figure with canned parameters: `c = 1.1`
/// unless the figure sweeps it, `N = 2^16` (`2^18` with `--full`), `L = 2048`.
pub fn run_reproduce(figure: &str, opts: &RunOptions) -> Result<RunOutcome, CliError> {
    if !FIGURES.contains(&figure) {
        return Err(CliError::Usage(format!(
            "unknown figure {figure:?}; expected one of {}",
            FIGURES.join(", ")
        )));
    }
    let grid_section = GridSection {
        n_points: if opts.full { 1 << 18 } else { 1 << 16 },
        half_length: 2048.0,
        dealias: false,
    };
    let grid = grid_section.build()?;
    let solver = SolverSection::default().build(false)?;
    let dir = opts
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT_DIR).join(figure));
    let config_echo = json!({
        "figure": figure,
        "full": opts.full,
        "grid": grid_section,
        "solver": {
            "tol_increment": solver.tol_increment,
            "tol_residual": solver.tol_residual,
            "tol_factor": solver.tol_factor,
            "max_iterations": solver.max_iterations,
        },
        "workers": opts.workers,
        "output_dir": dir,
    });
    let mut out = OutputDir::prepare(&dir)?;
    let mut manifest = ResultManifest::new("reproduce", config_echo);
    manifest.set("grid", grid_summary(&grid));
    let params = |alpha: f64, p: u32, c: f64| ModelParams::new(alpha, p, c).map_err(CliError::from);

    let failure = match figure {
        "fig1" => {
            let pr = params(1.0, 1, 1.1)?;
            let solved = solve_for(&grid, &pr, &solver)?;
            manifest.wallclock.insert("solve".into(), solved.seconds);
            if let Some(r) = &solved.result {
                out.write("fig1_profile.csv", "profile", &profile_csv(&r.profile))?;
                out.write("fig1_history.csv", "history", &history_csv(&r.history))?;
                if let Some(diff) = exact_difference(&r.profile, &pr, 0.0) {
                    out.write("fig1_difference.csv", "difference", &profile_csv(&diff))?;
                    manifest.set("max_abs_difference", diff.sup_norm());
                }
                manifest.set("solution", solution_summary(r, &pr));
            }
            solved.failure
        }
        "fig2" | "fig3" | "fig4" => {
            let cases: Vec<(String, ModelParams)> = match figure {
                "fig2" => [0.6, 0.8, 1.0]
                    .iter()
                    .map(|&a| Ok((format!("alpha{}", label(a)), params(a, 1, 1.1)?)))
                    .collect::<Result<_, CliError>>()?,
                "fig3" => [0.6, 0.8]
                    .iter()
                    .map(|&a| Ok((format!("alpha{}", label(a)), params(a, 1, 1.1)?)))
                    .collect::<Result<_, CliError>>()?,
                _ => (1..=4)
                    .map(|p| Ok((format!("p{p}"), params(0.8, p, 1.1)?)))
                    .collect::<Result<_, CliError>>()?,
            };
            let list: Vec<ModelParams> = cases.iter().map(|(_, p)| *p).collect();
            let start = Instant::now();
            let solved = pool(opts.workers)?.install(|| {
                list.par_iter()
                    .map(|pr| solve_for(&grid, pr, &solver))
                    .collect::<Vec<_>>()
            });
            manifest
                .wallclock
                .insert("solve".into(), start.elapsed().as_secs_f64());
            let mut failures = Vec::new();
            for ((name, pr), solved) in cases.iter().zip(solved) {
                let solved = solved?;
                if let Some(r) = &solved.result {
                    if figure == "fig3" {
                        let file = format!("fig3_history_{name}.csv");
                        out.write(&file, "history", &history_csv(&r.history))?;
                    } else {
                        let file = format!("{figure}_profile_{name}.csv");
                        out.write(&file, "profile", &profile_csv(&r.profile))?;
                    }
                    manifest.set(name, solution_summary(r, pr));
                }
                failures.extend(solved.failure);
            }
            (!failures.is_empty()).then(|| failures.join("; "))
        }
        "fig5" => {
            let speeds = figure5_speeds();
            let panels: [(&str, Vec<(f64, u32)>); 2] = [
                (
                    "fig5_speed_amplitude_p.csv",
                    vec![(0.8, 1), (0.8, 2), (0.8, 3)],
                ),
                (
                    "fig5_speed_amplitude_alpha.csv",
                    vec![(0.6, 1), (0.8, 1), (1.0, 1)],
                ),
            ];
            let mut failures = Vec::new();
            let start = Instant::now();
            for (file, curves) in panels {
                let mut points = Vec::new();
                for &(a, p) in &curves {
                    for &c in &speeds {
                        points.push(params(a, p, c)?);
                    }
                }
                let rows = sweep_rows(&points, &grid, &solver, opts.workers)?;
                out.write(file, "sweep", &sweep_csv(&rows))?;
                failures.extend(sweep_failure(&rows));
            }
            manifest
                .wallclock
                .insert("sweep".into(), start.elapsed().as_secs_f64());
            (!failures.is_empty()).then(|| failures.join("; "))
        }
        _ => {
            let (pr, times) = if figure == "fig6" {
                (params(1.0, 1, 1.1)?, vec![0.0, 20.0])
            } else {
                (params(0.6, 1, 1.1)?, vec![0.0, 10.0, 20.0])
            };
            let solved = solve_for(&grid, &pr, &solver)?;
            manifest.wallclock.insert("solve".into(), solved.seconds);
            match solved.result {
                Some(r) if solved.failure.is_none() => {
                    manifest.set("solution", solution_summary(&r, &pr));
                    let time = TimeGrid::with_step(20.0, 0.005)?;
                    let prefix = format!("{figure}_");
                    evolve_and_write(
                        &mut out,
                        &mut manifest,
                        &prefix,
                        &r.profile,
                        &pr,
                        &time,
                        &times,
                        &EvolutionOptions::default(),
                    )?
                }
                _ => solved.failure,
            }
        }
    };
    if failure.is_some() && manifest.status == "ok" {
        manifest.status = "not_converged".into();
    }
    finish(out, manifest, failure)
}

fn solve_for(
    grid: &SpectralGrid,
    params: &ModelParams,
    solver: &SolverConfig,
) -> Result<Solved, CliError> {
    run_solver(&default_seed(grid, params)?, params, solver)
}
