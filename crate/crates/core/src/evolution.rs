//! Pseudo-spectral time evolution.
//!
//! In Fourier space the equation becomes, mode by mode,
//!
//! ```text
//! dÛ/dt = -iκ [Û + ½ (U^{p+1})^ + ¾|κ|^α Û] / (1 + (5/4)|κ|^α)
//! ```
//!
//! which is integrated with classical RK4. The state is the spectrum; physical
//! space is visited only for the nonlinear term and for outputs.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{conserved_quantities, nonlinear_power, ConservedSnapshot, ModelParams};
use crate::spectral::{
    forward_transform, fractional_symbol, inverse_transform, Spectrum, WaveProfile,
};

/// Uniform partition of `[0, T]` into `n_steps` steps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    pub t_final: f64,
    pub n_steps: usize,
    pub dt: f64,
}

impl TimeGrid {
    /// `T = 0` is accepted with zero steps and means "no evolution".
    pub fn new(t_final: f64, n_steps: usize) -> Result<Self> {
        if !(t_final.is_finite() && t_final >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "t_final must be finite and non-negative, got {t_final}"
            )));
        }
        if t_final == 0.0 {
            return Ok(Self {
                t_final,
                n_steps: 0,
                dt: 0.0,
            });
        }
        if n_steps == 0 {
            return Err(Error::InvalidParameter("n_steps must be at least 1".into()));
        }
        Ok(Self {
            t_final,
            n_steps,
            dt: t_final / n_steps as f64,
        })
    }

    /// Grid with step `dt`; `T/dt` must be an integer up to round-off.
    pub fn with_step(t_final: f64, dt: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "dt must be positive, got {dt}"
            )));
        }
        if t_final == 0.0 {
            return Self::new(0.0, 0);
        }
        let steps = (t_final / dt).round();
        if steps < 1.0 || (steps * dt - t_final).abs() > 1e-9 * t_final {
            return Err(Error::InvalidParameter(format!(
                "t_final = {t_final} is not a whole number of steps dt = {dt}"
            )));
        }
        Self::new(t_final, steps as usize)
    }

    pub fn time_at(&self, step: usize) -> f64 {
        if step == self.n_steps {
            self.t_final
        } else {
            step as f64 * self.dt
        }
    }

    /// Step whose time is nearest to `t`.
    pub fn nearest_step(&self, t: f64) -> usize {
        if self.n_steps == 0 {
            return 0;
        }
        ((t / self.dt).round().max(0.0) as usize).min(self.n_steps)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolutionOptions {
    /// Conserved quantities are evaluated every `drift_stride` steps (and at
    /// the final step).
    pub drift_stride: usize,
    /// Abort when `‖u‖_∞` exceeds this multiple of the initial sup-norm.
    pub divergence_factor: f64,
}

impl Default for EvolutionOptions {
    fn default() -> Self {
        Self {
            drift_stride: 1,
            divergence_factor: 1e6,
        }
    }
}

/// Snapshots and conserved-quantity drift of one run.
#[derive(Clone, Debug)]
pub struct EvolutionTrace {
    /// Actual step times of the snapshots, in request order.
    pub snapshot_times: Vec<f64>,
    pub snapshots: Vec<WaveProfile>,
    pub drift_times: Vec<f64>,
    /// `(I_0(t) - I_0(0)) / |I_0(0)|` (absolute when `I_0(0) = 0`).
    pub i0_drift: Vec<f64>,
    /// Same for `I_1`.
    pub i1_drift: Vec<f64>,
    pub initial: ConservedSnapshot,
}

impl EvolutionTrace {
    pub fn max_abs_i0_drift(&self) -> f64 {
        self.i0_drift.iter().fold(0.0, |m, d| m.max(d.abs()))
    }

    pub fn max_abs_i1_drift(&self) -> f64 {
        self.i1_drift.iter().fold(0.0, |m, d| m.max(d.abs()))
    }
}

/// Per-mode multipliers of the linear and nonlinear parts of the
/// right-hand side. The unpaired `-N/2` mode is frozen.
struct FourierOde {
    params: ModelParams,
    linear: Vec<Complex64>,
    nonlinear: Vec<Complex64>,
}

impl FourierOde {
    fn new(spectrum: &Spectrum, params: &ModelParams) -> Self {
        let grid = spectrum.grid();
        let nyquist = grid.nyquist_index();
        let mut linear = Vec::with_capacity(grid.n_points());
        let mut nonlinear = Vec::with_capacity(grid.n_points());
        for (i, &kappa) in grid.wavenumbers().iter().enumerate() {
            if i == nyquist {
                linear.push(Complex64::new(0.0, 0.0));
                nonlinear.push(Complex64::new(0.0, 0.0));
                continue;
            }
            let frac = fractional_symbol(kappa, params.alpha);
            let inertia = 1.0 + 1.25 * frac;
            linear.push(Complex64::new(0.0, -kappa * (1.0 + 0.75 * frac) / inertia));
            nonlinear.push(Complex64::new(0.0, -0.5 * kappa / inertia));
        }
        Self {
            params: *params,
            linear,
            nonlinear,
        }
    }

    fn eval(&self, state: &Spectrum) -> Result<Spectrum> {
        let u = inverse_transform(state)?;
        let power = forward_transform(&nonlinear_power(&u, self.params.p)?);
        let coeffs = state
            .coeffs()
            .iter()
            .zip(power.coeffs())
            .zip(self.linear.iter().zip(&self.nonlinear))
            .map(|((s, n), (a, b))| a * s + b * n)
            .collect();
        Spectrum::new(state.grid(), coeffs)
            .map_err(|_| Error::Blowup("non-finite right-hand side".into()))
    }

    fn step(&self, state: &Spectrum, dt: f64) -> Result<Spectrum> {
        if dt == 0.0 {
            return Ok(state.clone());
        }
        let axpy = |k: &Spectrum, h: f64| -> Result<Spectrum> {
            let coeffs = state
                .coeffs()
                .iter()
                .zip(k.coeffs())
                .map(|(s, k)| s + h * k)
                .collect();
            Spectrum::new(state.grid(), coeffs)
                .map_err(|_| Error::Blowup("non-finite RK4 stage".into()))
        };
        let k1 = self.eval(state)?;
        let k2 = self.eval(&axpy(&k1, 0.5 * dt)?)?;
        let k3 = self.eval(&axpy(&k2, 0.5 * dt)?)?;
        let k4 = self.eval(&axpy(&k3, dt)?)?;
        let sixth = dt / 6.0;
        let coeffs = state
            .coeffs()
            .iter()
            .zip(k1.coeffs())
            .zip(k2.coeffs())
            .zip(k3.coeffs().iter().zip(k4.coeffs()))
            .map(|(((s, a), b), (c, d))| s + sixth * (a + 2.0 * b + 2.0 * c + d))
            .collect();
        Spectrum::new(state.grid(), coeffs)
            .map_err(|_| Error::Blowup("non-finite RK4 update".into()))
    }
}

/// Time derivative of the spectrum.
pub fn rhs(spectrum: &Spectrum, params: &ModelParams) -> Result<Spectrum> {
    FourierOde::new(spectrum, params).eval(spectrum)
}

/// One classical RK4 step of size `dt` (negative steps integrate backwards).
pub fn rk4_step(spectrum: &Spectrum, params: &ModelParams, dt: f64) -> Result<Spectrum> {
    if !dt.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "dt must be finite, got {dt}"
        )));
    }
    FourierOde::new(spectrum, params).step(spectrum, dt)
}

fn relative_change(value: f64, reference: f64) -> f64 {
    if reference == 0.0 {
        value - reference
    } else {
        (value - reference) / reference.abs()
    }
}

/// Integrates `initial` over `time`, keeping a snapshot at the step nearest to
/// each entry of `output_times` and the relative drift of `I_0`, `I_1`.
///
/// Blow-up aborts with [`Error::EvolutionAborted`], which carries the trace
/// recorded so far.
pub fn evolve(
    initial: &WaveProfile,
    params: &ModelParams,
    time: &TimeGrid,
    output_times: &[f64],
    options: &EvolutionOptions,
) -> Result<EvolutionTrace> {
    if let Some(&t) = output_times
        .iter()
        .find(|&&t| !(t.is_finite() && t >= 0.0 && t <= time.t_final * (1.0 + 1e-12)))
    {
        return Err(Error::InvalidParameter(format!(
            "output time {t} lies outside [0, {}]",
            time.t_final
        )));
    }
    if options.drift_stride == 0 {
        return Err(Error::InvalidParameter(
            "drift_stride must be at least 1".into(),
        ));
    }
    let requested: Vec<usize> = output_times.iter().map(|&t| time.nearest_step(t)).collect();
    let initial_q = conserved_quantities(initial, params)?;
    let limit = options.divergence_factor * initial.sup_norm().max(f64::MIN_POSITIVE);

    let mut snapshots: Vec<Option<WaveProfile>> = vec![None; requested.len()];
    let mut trace = EvolutionTrace {
        snapshot_times: requested.iter().map(|&s| time.time_at(s)).collect(),
        snapshots: Vec::new(),
        drift_times: vec![0.0],
        i0_drift: vec![0.0],
        i1_drift: vec![0.0],
        initial: initial_q,
    };
    let take_snapshots = |step: usize, u: &WaveProfile, slots: &mut Vec<Option<WaveProfile>>| {
        for (slot, &s) in slots.iter_mut().zip(&requested) {
            if s == step {
                *slot = Some(u.clone());
            }
        }
    };
    take_snapshots(0, initial, &mut snapshots);

    let mut state = forward_transform(initial);
    let ode = FourierOde::new(&state, params);
    for step in 1..=time.n_steps {
        let outcome = ode.step(&state, time.dt).and_then(|next| {
            let u = inverse_transform(&next)?;
            let size = u.sup_norm();
            if size > limit {
                return Err(Error::Blowup(format!(
                    "sup-norm {size:.3e} exceeds {limit:.3e}"
                )));
            }
            Ok((next, u))
        });
        let (next, u) = match outcome {
            Ok(v) => v,
            Err(e) => {
                trace.snapshots = snapshots.into_iter().flatten().collect();
                return Err(Error::EvolutionAborted {
                    step,
                    reason: e.to_string(),
                    partial: Box::new(trace),
                });
            }
        };
        state = next;
        take_snapshots(step, &u, &mut snapshots);
        if step % options.drift_stride == 0 || step == time.n_steps {
            let q = conserved_quantities(&u, params)?;
            trace.drift_times.push(time.time_at(step));
            trace.i0_drift.push(relative_change(q.i0, initial_q.i0));
            trace.i1_drift.push(relative_change(q.i1, initial_q.i1));
        }
    }
    trace.snapshots = snapshots.into_iter().flatten().collect();
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::petviashvili::{default_seed, solve, SolverConfig};
    use crate::spectral::make_grid;
    use std::f64::consts::PI;

    fn params(alpha: f64, p: u32, c: f64) -> ModelParams {
        ModelParams::new(alpha, p, c).unwrap()
    }

    /// Linear dispersion relation: a mode e^{iκx} rotates as e^{-iωt}.
    fn omega(kappa: f64, alpha: f64) -> f64 {
        let f = kappa.abs().powf(alpha);
        kappa * (1.0 + 0.75 * f) / (1.0 + 1.25 * f)
    }

    #[test]
    fn time_grid_construction() {
        let t = TimeGrid::with_step(20.0, 0.005).unwrap();
        assert_eq!(t.n_steps, 4000);
        assert!((t.dt * t.n_steps as f64 - 20.0).abs() < 1e-12);
        assert_eq!(t.nearest_step(10.0), 2000);
        assert_eq!(t.nearest_step(10.0012), 2000);
        assert_eq!(t.nearest_step(99.0), 4000);
        assert!(TimeGrid::with_step(1.0, 0.3).is_err());
        assert!(TimeGrid::new(1.0, 0).is_err());
        assert_eq!(TimeGrid::new(0.0, 5).unwrap().n_steps, 0);
    }

    #[test]
    fn zero_state_is_stationary() {
        let grid = make_grid(32, 4.0).unwrap();
        let p = params(0.8, 1, 1.1);
        let zero = Spectrum::zeros(&grid);
        assert!(rhs(&zero, &p)
            .unwrap()
            .coeffs()
            .iter()
            .all(|c| c.norm() == 0.0));
        assert!(rk4_step(&zero, &p, 0.1)
            .unwrap()
            .coeffs()
            .iter()
            .all(|c| c.norm() == 0.0));
    }

    #[test]
    fn zero_step_is_identity() {
        let grid = make_grid(32, 4.0).unwrap();
        let u = WaveProfile::from_fn(&grid, |x| (-x * x).exp()).unwrap();
        let s = forward_transform(&u);
        let same = rk4_step(&s, &params(0.8, 1, 1.1), 0.0).unwrap();
        assert_eq!(same.coeffs(), s.coeffs());
    }

    #[test]
    fn linear_dispersion_growth_rate() {
        let half = 5.0;
        let alpha = 0.7;
        let grid = make_grid(32, half).unwrap();
        let eps = 1e-8;
        let u = WaveProfile::from_fn(&grid, |x| eps * (PI * x / half).cos()).unwrap();
        let s = forward_transform(&u);
        let ds = rhs(&s, &params(alpha, 1, 1.1)).unwrap();
        let kappa = PI / half;
        let expected = Complex64::new(0.0, -omega(kappa, alpha));
        for k in [1_i64, -1] {
            let rate = ds.coeff(k).unwrap() / s.coeff(k).unwrap();
            let expected = if k > 0 { expected } else { expected.conj() };
            assert!(
                (rate - expected).norm() <= 1e-6 * expected.norm(),
                "{rate} vs {expected}"
            );
        }
    }

    #[test]
    fn rk4_local_error_is_fifth_order() {
        let half = PI / 8.0; // κ = 8
        let alpha = 1.0;
        let grid = make_grid(16, half).unwrap();
        let p = params(alpha, 1, 1.1);
        let u = WaveProfile::from_fn(&grid, |x| 1e-8 * (PI * x / half).cos()).unwrap();
        let s = forward_transform(&u);
        let w = omega(PI / half, alpha);
        let c1 = s.coeff(1).unwrap();
        let err = |dt: f64| {
            let stepped = rk4_step(&s, &p, dt).unwrap();
            let exact = c1 * Complex64::from_polar(1.0, -w * dt);
            (stepped.coeff(1).unwrap() - exact).norm() / c1.norm()
        };
        let (e1, e2) = (err(1e-2), err(5e-3));
        let order = (e1 / e2).log2();
        assert!(order >= 3.9, "observed order {order} ({e1:e}, {e2:e})");
    }

    #[test]
    fn traveling_wave_rhs_is_pure_translation() {
        let p = params(0.8, 1, 1.1);
        let grid = make_grid(2048, 256.0).unwrap();
        let q = solve(
            &default_seed(&grid, &p).unwrap(),
            &p,
            &SolverConfig::default(),
        )
        .unwrap()
        .profile;
        let s = forward_transform(&q);
        let ds = rhs(&s, &p).unwrap();
        let scale = s
            .coeffs()
            .iter()
            .zip(grid.wavenumbers())
            .fold(0.0_f64, |m, (c, k)| m.max((c * k).norm()));
        for ((d, c), &kappa) in ds.coeffs().iter().zip(s.coeffs()).zip(grid.wavenumbers()) {
            let translation = Complex64::new(0.0, -kappa * p.speed) * c;
            assert!((d - translation).norm() <= 1e-9 * scale);
        }
    }

    #[test]
    fn forward_then_backward_returns() {
        let p = params(0.6, 1, 1.1);
        let grid = make_grid(512, 64.0).unwrap();
        let u = default_seed(&grid, &p).unwrap();
        let s = forward_transform(&u);
        let dt = 0.005;
        let back = rk4_step(&rk4_step(&s, &p, dt).unwrap(), &p, -dt).unwrap();
        let back = inverse_transform(&back).unwrap();
        assert!(back.distance_sup(&u).unwrap() <= 1e-10);
    }

    #[test]
    fn zero_horizon_returns_input() {
        let p = params(0.6, 1, 1.1);
        let grid = make_grid(64, 16.0).unwrap();
        let u = default_seed(&grid, &p).unwrap();
        let trace = evolve(
            &u,
            &p,
            &TimeGrid::new(0.0, 0).unwrap(),
            &[0.0],
            &EvolutionOptions::default(),
        )
        .unwrap();
        assert_eq!(trace.snapshots.len(), 1);
        assert_eq!(trace.snapshots[0].values(), u.values());
        assert_eq!(trace.i1_drift, vec![0.0]);
    }

    #[test]
    fn output_times_outside_horizon_rejected() {
        let p = params(0.6, 1, 1.1);
        let grid = make_grid(64, 16.0).unwrap();
        let u = default_seed(&grid, &p).unwrap();
        let time = TimeGrid::new(1.0, 10).unwrap();
        assert!(evolve(&u, &p, &time, &[1.5], &EvolutionOptions::default()).is_err());
        assert!(evolve(&u, &p, &time, &[-0.1], &EvolutionOptions::default()).is_err());
    }

    #[test]
    fn blow_up_aborts_with_partial_trace() {
        // A huge, under-resolved pulse with an oversized step.
        let p = params(1.5, 4, 1.1);
        let grid = make_grid(64, 4.0).unwrap();
        let u = WaveProfile::from_fn(&grid, |x| 40.0 * (-4.0 * x * x).exp()).unwrap();
        let time = TimeGrid::new(50.0, 50).unwrap();
        match evolve(&u, &p, &time, &[0.0, 50.0], &EvolutionOptions::default()) {
            Err(Error::EvolutionAborted { step, partial, .. }) => {
                assert!(step >= 1);
                assert_eq!(partial.snapshots.len(), 1);
                assert!(!partial.i1_drift.is_empty());
            }
            other => panic!("expected abort, got {other:?}"),
        }
    }

    #[test]
    fn short_run_translates_soliton() {
        let p = params(0.8, 1, 1.1);
        let grid = make_grid(2048, 128.0).unwrap(); // spacing 1/8
        let q = solve(
            &default_seed(&grid, &p).unwrap(),
            &p,
            &SolverConfig::default(),
        )
        .unwrap()
        .profile;
        // c·t = 1.375 is exactly 11 nodes
        let t = 1.25;
        let time = TimeGrid::with_step(t, 0.005).unwrap();
        let trace = evolve(&q, &p, &time, &[t], &EvolutionOptions::default()).unwrap();
        let shifted = q.circular_shift(11);
        let err = trace.snapshots[0].distance_sup(&shifted).unwrap();
        assert!(err <= 1e-6 * q.sup_norm(), "translation error {err}");
        assert!(trace.max_abs_i0_drift() <= 1e-12);
        assert!(trace.max_abs_i1_drift() <= 1e-8);
    }
}
