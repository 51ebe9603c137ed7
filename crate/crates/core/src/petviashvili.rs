//! Petviashvili iteration for solitary-wave profiles.
//!
//! Solitary waves `u = Q(x - ct)` satisfy `ℓ(κ) Q̂ = ½ (Q^{p+1})^` with
//! `ℓ(κ) = (5c/4 - 3/4)|κ|^α + c - 1`. The plain fixed-point map
//! `Q̂ ← (Q^{p+1})^ / (2ℓ)` either collapses to zero or blows up; rescaling
//! each step by `M^ν`, where
//!
//! ```text
//! M = Σ ℓ(κ) |Q̂(κ)|² / Σ ½ (Q^{p+1})^(κ) conj(Q̂(κ))
//! ```
//!
//! is one exactly at a solution, removes that instability.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{nonlinear_power, residual_from_parts, ModelParams};
use crate::spectral::{forward_transform, inverse_transform, SpectralGrid, Spectrum, WaveProfile};
use crate::theory;

/// Stopping thresholds and the stabilizing exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct SolverConfig {
    /// Threshold on `‖Q_n - Q_{n-1}‖_∞`.
    pub tol_increment: f64,
    /// Threshold on `‖𝒮Q_n‖_∞`.
    pub tol_residual: f64,
    /// Threshold on `|1 - M_n|`. Recorded but does not gate convergence.
    pub tol_factor: f64,
    pub max_iterations: usize,
    /// Stabilizing exponent; `None` selects `(p+1)/p`.
    pub nu: Option<f64>,
    /// Run even when the parameters admit no positive solitary wave.
    pub force: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            tol_increment: 1e-12,
            tol_residual: 1e-6,
            tol_factor: 1e-10,
            max_iterations: 500,
            nu: None,
            force: false,
        }
    }
}

impl SolverConfig {
    pub fn nu_for(&self, p: u32) -> f64 {
        self.nu.unwrap_or((p as f64 + 1.0) / p as f64)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, tol) in [
            ("tol_increment", self.tol_increment),
            ("tol_residual", self.tol_residual),
            ("tol_factor", self.tol_factor),
        ] {
            if !(tol.is_finite() && tol > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {tol}"
                )));
            }
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidParameter(
                "max_iterations must be at least 1".into(),
            ));
        }
        if let Some(nu) = self.nu {
            if !nu.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "nu must be finite, got {nu}"
                )));
            }
        }
        Ok(())
    }
}

/// Monitors for the iterate `Q_n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    /// `‖Q_n - Q_{n-1}‖_∞`
    pub increment_error: f64,
    /// `|1 - M_n|`
    pub factor_error: f64,
    /// `‖𝒮Q_n‖_∞`
    pub residual_error: f64,
}

#[derive(Clone, Debug)]
pub struct SolverResult {
    pub profile: WaveProfile,
    pub history: Vec<IterationRecord>,
    pub converged: bool,
    pub iterations_used: usize,
}

impl SolverResult {
    pub fn last(&self) -> Option<&IterationRecord> {
        self.history.last()
    }
}

/// `M` from the spectra of `Q` and `Q^{p+1}`. The constant measure factor of
/// the continuous integrals cancels in the ratio.
fn factor_from_spectra(
    q_hat: &Spectrum,
    power_hat: &Spectrum,
    params: &ModelParams,
) -> Result<f64> {
    let kappas = q_hat.grid().wavenumbers();
    let mut numerator = 0.0;
    let mut denominator = Complex64::new(0.0, 0.0);
    for ((q, n), &kappa) in q_hat.coeffs().iter().zip(power_hat.coeffs()).zip(kappas) {
        numerator += params.linear_symbol(kappa) * q.norm_sqr();
        denominator += 0.5 * n * q.conj();
    }
    if !(numerator.is_finite() && denominator.re.is_finite() && denominator.im.is_finite()) {
        return Err(Error::Blowup("stabilizing factor is not finite".into()));
    }
    if denominator.norm() < 1e-300 {
        return Err(Error::DegenerateFactor {
            denominator: denominator.norm(),
        });
    }
    if denominator.im.abs() > 1e-10 * denominator.norm() {
        return Err(Error::ImaginaryResidue {
            residue: denominator.im.abs() / denominator.norm(),
        });
    }
    Ok(numerator / denominator.re)
}

/// Stabilizing factor `M` of the profile `q`.
pub fn stabilizing_factor(q: &WaveProfile, params: &ModelParams) -> Result<f64> {
    let power = nonlinear_power(q, params.p)?;
    factor_from_spectra(&forward_transform(q), &forward_transform(&power), params)
}

/// `Q̂_next = M^ν (Q^{p+1})^ / (2ℓ)`.
fn next_spectrum(
    power_hat: &Spectrum,
    factor: f64,
    nu: f64,
    params: &ModelParams,
) -> Result<Spectrum> {
    let gain = factor.powf(nu);
    if !gain.is_finite() {
        return Err(Error::Blowup(format!("M^nu = {factor}^{nu} is not finite")));
    }
    let out = power_hat
        .multiplied(|kappa| Complex64::new(gain / (2.0 * params.linear_symbol(kappa)), 0.0));
    if out
        .coeffs()
        .iter()
        .any(|c| !(c.re.is_finite() && c.im.is_finite()))
    {
        return Err(Error::Blowup("iterate spectrum is not finite".into()));
    }
    Ok(out)
}

/// One stabilized fixed-point step.
pub fn iterate_once(q: &WaveProfile, params: &ModelParams, nu: f64) -> Result<WaveProfile> {
    let power = nonlinear_power(q, params.p)?;
    let power_hat = forward_transform(&power);
    let factor = factor_from_spectra(&forward_transform(q), &power_hat, params)?;
    inverse_transform(&next_spectrum(&power_hat, factor, nu, params)?)
}

/// Gaussian `A exp(-x²/w²)` with `A = 4(c-1)` and `w = (5c-3)/(4(c-1))`,
/// the amplitude and width of the `α = 1` soliton at speed `c`.
pub fn default_seed(grid: &SpectralGrid, params: &ModelParams) -> Result<WaveProfile> {
    let c = params.speed;
    let amplitude = 4.0 * (c - 1.0);
    let width = (5.0 * c - 3.0) / amplitude;
    if !(width.is_finite() && width != 0.0) {
        return Err(Error::InvalidParameter(format!(
            "no Gaussian seed scale at c = {c}"
        )));
    }
    WaveProfile::from_fn(grid, |x| amplitude * (-(x / width).powi(2)).exp())
}

/// Iterates from `initial` until both `‖Q_n - Q_{n-1}‖_∞ ≤ tol_increment`
/// and `‖𝒮Q_n‖_∞ ≤ tol_residual`, or `max_iterations` is reached.
///
/// Numerical failures inside the loop are reported as
/// [`Error::Diverged`] with the offending iteration number.
pub fn solve(
    initial: &WaveProfile,
    params: &ModelParams,
    config: &SolverConfig,
) -> Result<SolverResult> {
    config.validate()?;
    let report = theory::validate_params(params)?;
    if !report.admissible && !config.force {
        return Err(Error::Inadmissible(report));
    }
    if initial.sup_norm() == 0.0 {
        return Err(Error::InvalidParameter(
            "initial profile is identically zero".into(),
        ));
    }
    let nu = config.nu_for(params.p);
    let diverged = |iteration: usize| {
        move |e: Error| Error::Diverged {
            iteration,
            reason: e.to_string(),
        }
    };

    let mut q = initial.clone();
    let power = nonlinear_power(&q, params.p).map_err(diverged(0))?;
    let mut power_hat = forward_transform(&power);
    let mut factor =
        factor_from_spectra(&forward_transform(&q), &power_hat, params).map_err(diverged(0))?;

    let mut history = Vec::new();
    for n in 1..=config.max_iterations {
        let step = || -> Result<(WaveProfile, Spectrum, f64, f64)> {
            let next = inverse_transform(&next_spectrum(&power_hat, factor, nu, params)?)?;
            // Recompute the transform of the real iterate so the residual matches
            // `residual_operator(next)` bit for bit.
            let next_hat = forward_transform(&next);
            let next_power = nonlinear_power(&next, params.p)?;
            let next_power_hat = forward_transform(&next_power);
            let next_factor = factor_from_spectra(&next_hat, &next_power_hat, params)?;
            let residual = residual_from_parts(&next_hat, &next_power, params)?.sup_norm();
            Ok((next, next_power_hat, next_factor, residual))
        };
        let (next, next_power_hat, next_factor, residual) = step().map_err(diverged(n))?;
        let increment = next.distance_sup(&q)?;

        q = next;
        power_hat = next_power_hat;
        factor = next_factor;

        history.push(IterationRecord {
            iteration: n,
            increment_error: increment,
            factor_error: (1.0 - factor).abs(),
            residual_error: residual,
        });
        if increment <= config.tol_increment && residual <= config.tol_residual {
            return Ok(SolverResult {
                profile: q,
                history,
                converged: true,
                iterations_used: n,
            });
        }
    }
    Ok(SolverResult {
        profile: q,
        iterations_used: history.len(),
        history,
        converged: false,
    })
}
