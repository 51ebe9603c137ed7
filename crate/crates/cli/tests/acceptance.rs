//! Acceptance suite. Prints one PASS/FAIL line per criterion followed by
//! indented details, and exits non-zero if any criterion fails.
//!
//! Run alone with `cargo test -p gfbbm-cli --test acceptance`.

use std::f64::consts::PI;
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use gfbbm::{
    apply_fractional, default_seed, energy_identity_check, evolve, exact_soliton_profile,
    forward_transform, inverse_transform, make_grid, pohozaev_check, rk4_step, solve,
    validate_params, EvolutionOptions, EvolutionTrace, Finding, ModelParams, SolverConfig,
    SolverResult, SpectralGrid, TimeGrid, WaveProfile,
};
use gfbbm_cli::config::{GridSection, SweepSection};
use gfbbm_cli::output::parse_sweep_csv;
use gfbbm_cli::runs::figure5_speeds;
use gfbbm_cli::{run_sweep, RunConfig, RunOptions};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Desk-scale grid used by most criteria.
const DESK_N: usize = 1 << 16;
const DESK_L: f64 = 2048.0;

struct Verdict {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Verdict {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Self {
            pass,
            summary: summary.into(),
            details: Vec::new(),
        }
    }

    fn detail(mut self, line: impl Into<String>) -> Self {
        self.details.push(line.into());
        self
    }
}

fn params(alpha: f64, p: u32, c: f64) -> ModelParams {
    ModelParams::new(alpha, p, c).unwrap()
}

fn solve_from_seed(grid: &SpectralGrid, p: &ModelParams) -> SolverResult {
    let seed = default_seed(grid, p).unwrap();
    solve(&seed, p, &SolverConfig::default()).unwrap()
}

fn check(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAIL"
    }
}

struct ExactRun {
    result: SolverResult,
    seconds: f64,
    difference: f64,
}

fn exact_run() -> ExactRun {
    let grid = make_grid(DESK_N, DESK_L).unwrap();
    let p = params(1.0, 1, 1.1);
    let start = Instant::now();
    let result = solve_from_seed(&grid, &p);
    let seconds = start.elapsed().as_secs_f64();
    let exact = exact_soliton_profile(&grid, 0.0, 1.1).unwrap();
    let difference = result.profile.distance_sup(&exact).unwrap();
    ExactRun {
        result,
        seconds,
        difference,
    }
}

fn criterion_1(run: &ExactRun) -> Verdict {
    let r = &run.result;
    let pass =
        r.converged && r.iterations_used <= 200 && run.difference <= 1e-4 && run.seconds <= 60.0;
    Verdict::new(
        pass,
        format!(
            "exact-solution recovery: {} iterations, sup difference {:.3e}, {:.2} s",
            r.iterations_used, run.difference, run.seconds
        ),
    )
    .detail(format!("converged = {} (needs true)", r.converged))
    .detail(format!(
        "iterations {} <= 200: {}",
        r.iterations_used,
        check(r.iterations_used <= 200)
    ))
    .detail(format!(
        "sup |Q - Q_exact| {:.3e} <= 1e-4: {}",
        run.difference,
        check(run.difference <= 1e-4)
    ))
    .detail(format!(
        "runtime {:.2} s <= 60 s: {}",
        run.seconds,
        check(run.seconds <= 60.0)
    ))
}

/// Each step may grow by at most 1%.
fn decays(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] <= 1.01 * w[0])
}

fn criterion_2(run: &ExactRun) -> Verdict {
    let h = &run.result.history;
    let last = h.last().unwrap();
    let tail = &h[h.len().saturating_sub(10)..];
    let monitors: [(&str, Vec<f64>, f64, f64); 3] = [
        (
            "Error(n)",
            tail.iter().map(|r| r.increment_error).collect(),
            last.increment_error,
            1e-12,
        ),
        (
            "|1-M_n|",
            tail.iter().map(|r| r.factor_error).collect(),
            last.factor_error,
            1e-10,
        ),
        (
            "RES(n)",
            tail.iter().map(|r| r.residual_error).collect(),
            last.residual_error,
            1e-6,
        ),
    ];
    let mut pass = true;
    let mut details = Vec::new();
    for (name, values, terminal, tol) in &monitors {
        let terminal_ok = terminal <= tol;
        let decay_ok = decays(values);
        pass &= terminal_ok && decay_ok;
        details.push(format!(
            "{name}: terminal {terminal:.3e} <= {tol:e}: {}; monotone over final 10: {}",
            check(terminal_ok),
            check(decay_ok)
        ));
        let shown: Vec<String> = values.iter().map(|v| format!("{v:.2e}")).collect();
        details.push(format!("  final 10: {}", shown.join(" ")));
    }
    let mut v = Verdict::new(pass, "monitor decay in the exact-solution run");
    v.details = details;
    v
}

fn criterion_3() -> Vec<Verdict> {
    // Both identities are truncation-limited: the slowly decaying tails at
    // alpha = 0.6 need a long domain, and p = 2 needs spacing 1/32.
    let grid = make_grid(1 << 18, 4096.0).unwrap();
    let l = grid.half_length();
    let bump = WaveProfile::from_fn(&grid, |x| 1.0 + 0.1 * (PI * x / l).cos()).unwrap();
    let mut converged = Verdict::new(
        true,
        "identity suite: converged profiles pass both checks (<= 1e-3)",
    );
    let mut energy = Verdict::new(
        true,
        "identity suite: perturbed profiles fail the energy check (>= 1e-2)",
    );
    let mut pohozaev = Verdict::new(
        true,
        "identity suite: perturbed profiles fail the Pohozaev check (>= 1e-2)",
    );
    for alpha in [0.6, 0.8, 1.0] {
        for p in [1, 2] {
            let pr = params(alpha, p, 1.1);
            let r = solve_from_seed(&grid, &pr);
            let q = &r.profile;
            let perturbed = q.zip_with(&bump, |a, b| a * b).unwrap();
            let (poh, en) = (
                pohozaev_check(q, &pr).unwrap(),
                energy_identity_check(q, &pr).unwrap(),
            );
            let (ppoh, pen) = (
                pohozaev_check(&perturbed, &pr).unwrap(),
                energy_identity_check(&perturbed, &pr).unwrap(),
            );
            let case = format!("alpha={alpha} p={p}");
            let ok = r.converged && poh <= 1e-3 && en <= 1e-3;
            converged.pass &= ok;
            converged.details.push(format!(
                "{case}: converged {} in {} its, Pohozaev {poh:.2e}, energy {en:.2e}: {}",
                r.converged,
                r.iterations_used,
                check(ok)
            ));
            energy.pass &= pen >= 1e-2;
            energy.details.push(format!(
                "{case}: perturbed energy defect {pen:.2e}: {}",
                check(pen >= 1e-2)
            ));
            pohozaev.pass &= ppoh >= 1e-2;
            pohozaev.details.push(format!(
                "{case}: perturbed Pohozaev defect {ppoh:.2e} (unperturbed {poh:.2e}): {}",
                check(ppoh >= 1e-2)
            ));
        }
    }
    let grid_note = "grid N = 2^18, L = 4096";
    vec![
        converged.detail(grid_note),
        energy,
        pohozaev.detail(
            "the Pohozaev defect is invariant under Q -> aQ and the perturbation is ~1.1 Q on the \
             soliton core, so the perturbed defect tracks the unperturbed one",
        ),
    ]
}

fn criterion_4() -> Verdict {
    let grid = make_grid(DESK_N, DESK_L).unwrap();
    let runs: Vec<(f64, SolverResult)> = [0.6, 0.8, 1.0]
        .into_iter()
        .map(|a| (a, solve_from_seed(&grid, &params(a, 1, 1.1))))
        .collect();
    let amp: Vec<f64> = runs.iter().map(|(_, r)| r.profile.max_value()).collect();
    let all_converged = runs.iter().all(|(_, r)| r.converged);
    let ordered = amp[0] > amp[1] && amp[1] > amp[2];
    let exact_peak = (amp[2] - 0.4).abs() <= 1e-4;
    Verdict::new(
        all_converged && ordered && exact_peak,
        format!(
            "alpha-peakedness: amp(0.6) = {:.6} > amp(0.8) = {:.6} > amp(1.0) = {:.6}",
            amp[0], amp[1], amp[2]
        ),
    )
    .detail(format!("all converged: {}", check(all_converged)))
    .detail(format!("strict ordering: {}", check(ordered)))
    .detail(format!(
        "|amp(1.0) - 0.4| = {:.2e} <= 1e-4: {}",
        (amp[2] - 0.4).abs(),
        check(exact_peak)
    ))
}

fn criterion_5() -> Verdict {
    let dir = tempfile::tempdir().unwrap();
    let config = RunConfig {
        grid: Some(GridSection {
            n_points: DESK_N,
            half_length: DESK_L,
            dealias: false,
        }),
        sweep: Some(SweepSection {
            alpha: vec![0.8],
            p: vec![1, 2, 3],
            c: figure5_speeds(),
        }),
        ..RunConfig::default()
    };
    let opts = RunOptions {
        out: Some(dir.path().to_path_buf()),
        ..RunOptions::default()
    };
    let outcome = run_sweep(&config, &opts).unwrap();
    let table = std::fs::read_to_string(dir.path().join("sweep.csv")).unwrap();
    let rows = parse_sweep_csv(&table).unwrap();
    let all_ok = outcome.failure.is_none() && rows.iter().all(|r| r.status == "ok");

    // +1: amplitude increases with p, -1: decreases, 0: mixed
    let speeds = figure5_speeds();
    let amp = |p: u32, c: f64| {
        rows.iter()
            .find(|r| r.p == p && r.c == c)
            .map_or(f64::NAN, |r| r.amplitude)
    };
    let signs: Vec<(f64, i32)> = speeds
        .iter()
        .map(|&c| {
            let (a1, a2, a3) = (amp(1, c), amp(2, c), amp(3, c));
            let s = if a1 < a2 && a2 < a3 {
                1
            } else if a1 > a2 && a2 > a3 {
                -1
            } else {
                0
            };
            (c, s)
        })
        .collect();
    let last_increasing = signs.iter().rev().find(|(_, s)| *s == 1).map(|(c, _)| *c);
    let first_decreasing = signs.iter().find(|(_, s)| *s == -1).map(|(c, _)| *c);
    let bracket = match (last_increasing, first_decreasing) {
        (Some(lo), Some(hi)) => {
            let clean = signs
                .iter()
                .all(|&(c, s)| (c > lo || s == 1) && (c < hi || s == -1));
            (lo < hi && lo >= 1.3 && hi <= 1.7 && clean).then_some((lo, hi))
        }
        _ => None,
    };
    let pattern: String = signs
        .iter()
        .map(|(_, s)| match s {
            1 => '+',
            -1 => '-',
            _ => '0',
        })
        .collect();
    let summary = match bracket {
        Some((lo, hi)) => {
            format!("speed-amplitude crossing: ordering in p reverses for c* in ({lo}, {hi})")
        }
        None => "speed-amplitude crossing: no reversal bracketed inside [1.3, 1.7]".to_string(),
    };
    Verdict::new(all_ok && bracket.is_some(), summary)
        .detail(format!(
            "{} sweep points, all converged: {}",
            rows.len(),
            check(all_ok)
        ))
        .detail(format!(
            "ordering by c = 1.05..2.00 (+ increasing in p, - decreasing): {pattern}"
        ))
}

struct Evolution {
    initial: WaveProfile,
    trace: EvolutionTrace,
    seconds: f64,
}

fn evolve_soliton(alpha: f64) -> Evolution {
    let grid = make_grid(DESK_N, DESK_L).unwrap();
    let p = params(alpha, 1, 1.1);
    let initial = solve_from_seed(&grid, &p).profile;
    let time = TimeGrid::with_step(20.0, 0.005).unwrap();
    let start = Instant::now();
    let trace = evolve(
        &initial,
        &p,
        &time,
        &[0.0, 10.0, 20.0],
        &EvolutionOptions::default(),
    )
    .unwrap();
    Evolution {
        initial,
        trace,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn criterion_6(runs: &[(f64, &Evolution)]) -> Verdict {
    let mut v = Verdict::new(true, "conservation over T = 20, dt = 0.005");
    for (alpha, run) in runs {
        let (d0, d1) = (run.trace.max_abs_i0_drift(), run.trace.max_abs_i1_drift());
        let ok = d1 <= 1e-6 && d0 <= 1e-12;
        v.pass &= ok;
        v.details.push(format!(
            "alpha={alpha}: max |dI1/I1| {d1:.2e} <= 1e-6, max |dI0/I0| {d0:.2e} <= 1e-12 \
             over {} steps ({:.1} s): {}",
            run.trace.drift_times.len() - 1,
            run.seconds,
            check(ok)
        ));
        if *alpha == 1.0 {
            let last = run.trace.snapshots.last().unwrap();
            let exact = exact_soliton_profile(last.grid(), 20.0, 1.1).unwrap();
            v.details.push(format!(
                "alpha=1 (informational): sup |u(20) - exact(x - 22)| = {:.2e}",
                last.distance_sup(&exact).unwrap()
            ));
        }
    }
    v
}

fn criterion_7(run: &Evolution) -> Verdict {
    let grid = run.initial.grid();
    let peak = run.initial.max_value();
    let mut v = Verdict::new(true, "traveling-wave transport at alpha = 0.6");
    for (&t, snap) in run.trace.snapshot_times.iter().zip(&run.trace.snapshots) {
        if t == 0.0 {
            continue;
        }
        let nodes = 1.1 * t / grid.spacing();
        let shift = nodes.round();
        assert!(
            (nodes - shift).abs() < 1e-9,
            "c t is not a whole number of nodes"
        );
        let moved = run.initial.circular_shift(shift as isize);
        let err = snap.distance_sup(&moved).unwrap() / peak;
        let ok = err <= 1e-3;
        if t == 20.0 {
            v.pass &= ok;
        }
        v.details.push(format!(
            "t={t}: shift {shift} nodes, sup error / peak = {err:.2e} <= 1e-3: {}",
            check(ok)
        ));
    }
    v
}

/// `a/b` with small integers; compared exactly by cross-multiplication.
#[derive(Clone, Copy, Debug)]
struct Ratio(i64, i64);

impl Ratio {
    fn value(self) -> f64 {
        self.0 as f64 / self.1 as f64
    }

    fn cmp(self, other: Ratio) -> std::cmp::Ordering {
        (self.0 * other.1).cmp(&(other.0 * self.1))
    }
}

fn oracle(alpha: Ratio, p: i64, c: Ratio) -> Vec<Finding> {
    use std::cmp::Ordering::*;
    let t = Ratio(p, p + 2);
    let (lower, upper) = (Ratio(3, 5), Ratio(1, 1));
    let a_vs_t = alpha.cmp(t);
    let region = if c.cmp(lower) == Equal || c.cmp(upper) == Equal {
        Finding::NonexistCaseIII
    } else if c.cmp(lower) == Greater && c.cmp(upper) == Less && a_vs_t != Less {
        Finding::NonexistCaseI
    } else if (c.cmp(lower) == Less || c.cmp(upper) == Greater) && a_vs_t != Greater {
        Finding::NonexistCaseII
    } else if c.cmp(upper) != Greater {
        Finding::NoPositiveWave
    } else {
        Finding::Ok
    };
    let mut findings = vec![region];
    // p >= p_max = 2a/(1-a), for a < 1
    if alpha.cmp(upper) == Less && p * (alpha.1 - alpha.0) >= 2 * alpha.0 {
        findings.push(Finding::SupercriticalP);
    }
    if a_vs_t == Less {
        findings.push(Finding::HamiltonianIllDefined);
    }
    findings
}

fn criterion_8() -> Verdict {
    let alphas = [
        (1, 5),
        (1, 3),
        (1, 2),
        (3, 5),
        (2, 3),
        (3, 4),
        (4, 5),
        (9, 10),
        (1, 1),
        (3, 2),
    ];
    let speeds = [
        (1, 5),
        (1, 2),
        (3, 5),
        (7, 10),
        (4, 5),
        (1, 1),
        (21, 20),
        (11, 10),
        (3, 2),
        (2, 1),
    ];
    let mut mismatches = Vec::new();
    let mut count = 0;
    let mut seen = std::collections::BTreeSet::new();
    for &(an, ad) in &alphas {
        for p in 1..=10 {
            for &(cn, cd) in &speeds {
                let (alpha, c) = (Ratio(an, ad), Ratio(cn, cd));
                let expected = oracle(alpha, p, c);
                let got = validate_params(&params(alpha.value(), p as u32, c.value())).unwrap();
                count += 1;
                seen.extend(expected.iter().copied());
                let regions = got
                    .reasons
                    .iter()
                    .filter(|f| {
                        !matches!(f, Finding::SupercriticalP | Finding::HamiltonianIllDefined)
                    })
                    .count();
                if got.reasons != expected
                    || regions != 1
                    || got.admissible != (expected == [Finding::Ok])
                {
                    mismatches.push(format!(
                        "({an}/{ad}, {p}, {cn}/{cd}): {got} vs {expected:?}"
                    ));
                }
            }
        }
    }
    let corners: [(f64, u32, f64, &[Finding]); 7] = [
        (0.8, 1, 0.6, &[Finding::NonexistCaseIII]),
        (0.8, 1, 1.0, &[Finding::NonexistCaseIII]),
        (
            1.0 / 3.0,
            1,
            0.8,
            &[Finding::NonexistCaseI, Finding::SupercriticalP],
        ),
        (
            1.0 / 3.0,
            1,
            1.1,
            &[Finding::NonexistCaseII, Finding::SupercriticalP],
        ),
        (
            0.5,
            2,
            1.1,
            &[Finding::NonexistCaseII, Finding::SupercriticalP],
        ),
        (
            0.6,
            3,
            2.0,
            &[Finding::NonexistCaseII, Finding::SupercriticalP],
        ),
        (0.5, 1, 0.8, &[Finding::NonexistCaseI]),
    ];
    for (a, p, c, expected) in corners {
        let got = validate_params(&params(a, p, c)).unwrap();
        if got.reasons != expected {
            mismatches.push(format!("corner ({a}, {p}, {c}): {got} vs {expected:?}"));
        }
    }
    let regions = [
        Finding::NonexistCaseI,
        Finding::NonexistCaseII,
        Finding::NonexistCaseIII,
        Finding::NoPositiveWave,
        Finding::SupercriticalP,
        Finding::Ok,
    ];
    let covered = regions.iter().all(|r| seen.contains(r));
    let mut v = Verdict::new(
        mismatches.is_empty() && covered && count == 1000,
        format!(
            "nonexistence gate: {count} lattice points and 7 corners, {} mismatches",
            mismatches.len()
        ),
    )
    .detail(format!("all region tags exercised: {}", check(covered)));
    v.details.extend(mismatches.into_iter().take(10));
    v
}

fn criterion_9() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(20240611);
    let mut worst = [0.0_f64; 3];
    for _ in 0..20 {
        let n = 1 << rng.gen_range(4..=11);
        let grid = make_grid(n, rng.gen_range(1.0..50.0)).unwrap();
        let values: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let u = WaveProfile::new(&grid, values).unwrap();

        let back = inverse_transform(&forward_transform(&u)).unwrap();
        worst[0] = worst[0].max(back.distance_sup(&u).unwrap() / u.sup_norm());

        let energy: f64 = u.values().iter().map(|v| v * v).sum::<f64>() / n as f64;
        let spectral: f64 = forward_transform(&u)
            .coeffs()
            .iter()
            .map(|c| c.norm_sqr())
            .sum();
        worst[1] = worst[1].max((energy - spectral).abs() / energy);

        let (a, b) = (rng.gen_range(0.05..1.0), rng.gen_range(0.05..1.0));
        let two_step = apply_fractional(&apply_fractional(&u, a).unwrap(), b).unwrap();
        let one_step = apply_fractional(&u, a + b).unwrap();
        worst[2] = worst[2].max(two_step.distance_sup(&one_step).unwrap() / one_step.sup_norm());
    }
    let order = rk4_order();
    let pass = worst[0] <= 1e-12 && worst[1] <= 1e-12 && worst[2] <= 1e-10 && order >= 3.9;
    Verdict::new(pass, "operator properties on 20 random fields")
        .detail(format!(
            "round trip: worst relative error {:.2e} <= 1e-12: {}",
            worst[0],
            check(worst[0] <= 1e-12)
        ))
        .detail(format!(
            "Parseval: worst relative defect {:.2e} <= 1e-12: {}",
            worst[1],
            check(worst[1] <= 1e-12)
        ))
        .detail(format!(
            "semigroup D^a D^b = D^(a+b): worst {:.2e} <= 1e-10: {}",
            worst[2],
            check(worst[2] <= 1e-10)
        ))
        .detail(format!(
            "RK4 single-mode observed order {order:.3} >= 3.9: {}",
            check(order >= 3.9)
        ))
}

/// Local error of one RK4 step on a linear mode, at dt = 1e-2 and 5e-3.
fn rk4_order() -> f64 {
    let half = PI / 8.0;
    let alpha = 0.7;
    let grid = make_grid(16, half).unwrap();
    let p = params(alpha, 1, 1.1);
    let u = WaveProfile::from_fn(&grid, |x| 1e-12 * (PI * x / half).cos()).unwrap();
    let s = forward_transform(&u);
    let kappa = PI / half;
    let f = kappa.powf(alpha);
    let omega = kappa * (1.0 + 0.75 * f) / (1.0 + 1.25 * f);
    let c1 = s.coeff(1).unwrap();
    let err = |dt: f64| {
        let stepped = rk4_step(&s, &p, dt).unwrap();
        let exact = c1 * Complex64::from_polar(1.0, -omega * dt);
        (stepped.coeff(1).unwrap() - exact).norm() / c1.norm()
    };
    (err(1e-2) / err(5e-3)).log2()
}

fn guarded<T>(f: impl FnOnce() -> T) -> Result<T, String> {
    panic::catch_unwind(AssertUnwindSafe(f)).map_err(|e| {
        e.downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into())
    })
}

fn report(id: &str, verdict: Result<Verdict, String>, passed: &mut usize, total: &mut usize) {
    *total += 1;
    match verdict {
        Ok(v) => {
            if v.pass {
                *passed += 1;
            }
            println!(
                "acceptance {id}: {} {}",
                if v.pass { "PASS" } else { "FAIL" },
                v.summary
            );
            for d in v.details {
                println!("    {d}");
            }
        }
        Err(msg) => println!("acceptance {id}: FAIL (error: {msg})"),
    }
}

fn main() {
    // libtest flags such as --nocapture are accepted and ignored; `--list`
    // must print nothing so test discovery works.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    panic::set_hook(Box::new(|_| {}));
    let start = Instant::now();
    let (mut passed, mut total) = (0, 0);

    let exact = guarded(exact_run);
    let c1 = exact.as_ref().map(criterion_1).map_err(Clone::clone);
    report("criterion 1", c1, &mut passed, &mut total);
    let c2 = exact.as_ref().map(criterion_2).map_err(Clone::clone);
    report("criterion 2", c2, &mut passed, &mut total);

    match guarded(criterion_3) {
        Ok(parts) => {
            // Three sub-checks, reported as one criterion.
            let pass = parts.iter().all(|v| v.pass);
            let mut v = Verdict::new(
                pass,
                "identity suite over alpha in {0.6, 0.8, 1.0}, p in {1, 2}",
            );
            for part in parts {
                v.details.push(format!(
                    "[{}] {}",
                    if part.pass { "pass" } else { "FAIL" },
                    part.summary
                ));
                v.details
                    .extend(part.details.into_iter().map(|d| format!("  {d}")));
            }
            report("criterion 3", Ok(v), &mut passed, &mut total);
        }
        Err(e) => report("criterion 3", Err(e), &mut passed, &mut total),
    }

    report("criterion 4", guarded(criterion_4), &mut passed, &mut total);
    report("criterion 5", guarded(criterion_5), &mut passed, &mut total);

    let slow = guarded(|| (evolve_soliton(1.0), evolve_soliton(0.6)));
    let c6 = slow
        .as_ref()
        .map(|(one, frac)| criterion_6(&[(1.0, one), (0.6, frac)]))
        .map_err(Clone::clone);
    report("criterion 6", c6, &mut passed, &mut total);
    let c7 = slow
        .as_ref()
        .map(|(_, frac)| criterion_7(frac))
        .map_err(Clone::clone);
    report("criterion 7", c7, &mut passed, &mut total);

    report("criterion 8", guarded(criterion_8), &mut passed, &mut total);
    report("criterion 9", guarded(criterion_9), &mut passed, &mut total);

    println!(
        "acceptance: {passed}/{total} criteria pass ({:.0} s)",
        start.elapsed().as_secs_f64()
    );
    if passed != total {
        std::process::exit(1);
    }
}
