//! Model parameters, the traveling-wave residual and conserved quantities.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{
    apply_fractional, forward_transform, fractional_symbol, inverse_transform, Spectrum,
    WaveProfile,
};
use crate::theory;

/// `(α, p, c)`: fractional order, nonlinearity exponent and wave speed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModelParams {
    pub alpha: f64,
    pub p: u32,
    pub speed: f64,
}

impl ModelParams {
    pub fn new(alpha: f64, p: u32, speed: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 2.0) {
            return Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 2), got {alpha}"
            )));
        }
        if p < 1 {
            return Err(Error::InvalidParameter("p must be at least 1".into()));
        }
        if !speed.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "speed must be finite, got {speed}"
            )));
        }
        Ok(Self { alpha, p, speed })
    }

    /// Whether positive solitary waves exist for these parameters.
    pub fn admissible(&self) -> bool {
        theory::validate_params(self).is_ok_and(|r| r.admissible)
    }

    /// Symbol of the linear traveling-wave operator,
    /// `ℓ(κ) = (5c/4 - 3/4)|κ|^α + c - 1`.
    pub fn linear_symbol(&self, kappa: f64) -> f64 {
        let c = self.speed;
        (1.25 * c - 0.75) * fractional_symbol(kappa, self.alpha) + c - 1.0
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={}, p={}, c={}", self.alpha, self.p, self.speed)
    }
}

/// `I_0`, `I_1` and the Hamiltonian `H` of a profile.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConservedSnapshot {
    pub i0: f64,
    pub i1: f64,
    pub hamiltonian: f64,
}

/// Pointwise `u^{p+1}`. On a dealiasing grid the product is additionally
/// truncated with the 2/3 rule.
pub fn nonlinear_power(u: &WaveProfile, p: u32) -> Result<WaveProfile> {
    if p < 1 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    let exponent = p as i32 + 1;
    let values: Vec<f64> = u.values().iter().map(|v| v.powi(exponent)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Blowup(format!("u^{exponent} overflowed")));
    }
    let power = WaveProfile::new(u.grid(), values)?;
    if u.grid().dealias() {
        let mut spectrum = forward_transform(&power);
        spectrum.truncate_two_thirds();
        return inverse_transform(&spectrum);
    }
    Ok(power)
}

/// `𝒮Q = (3/4 - 5c/4) D^α Q + (1 - c) Q + ½ Q^{p+1}`, the negated
/// traveling-wave equation. Vanishes on solitary-wave profiles.
pub fn residual_operator(q: &WaveProfile, params: &ModelParams) -> Result<WaveProfile> {
    let q_hat = forward_transform(q);
    let power = nonlinear_power(q, params.p)?;
    residual_from_parts(&q_hat, &power, params)
}

/// Residual from the spectrum of `Q` and the (already formed) power
/// `Q^{p+1}`. Shared with the solver so both report identical numbers.
pub(crate) fn residual_from_parts(
    q_hat: &Spectrum,
    power: &WaveProfile,
    params: &ModelParams,
) -> Result<WaveProfile> {
    let linear = q_hat.multiplied(|kappa| Complex64::new(-params.linear_symbol(kappa), 0.0));
    let linear = inverse_transform(&linear)?;
    linear.zip_with(power, |l, n| l + 0.5 * n)
}

/// Rectangle-rule evaluation of
///
/// ```text
/// I_0 = ∫ u
/// I_1 = ∫ u² + (5/4)|D^{α/2} u|²
/// H   = ½ ∫ u² + u^{p+2}/(p+2) + (3/4)|D^{α/2} u|²
/// ```
///
/// `H` is evaluated regardless of whether it is well defined on the line.
pub fn conserved_quantities(u: &WaveProfile, params: &ModelParams) -> Result<ConservedSnapshot> {
    let half = apply_fractional(u, 0.5 * params.alpha)?;
    let h = u.grid().spacing();
    let p2 = params.p as i32 + 2;
    let (mut mass, mut square, mut frac, mut power) = (0.0, 0.0, 0.0, 0.0);
    for (&v, &d) in u.values().iter().zip(half.values()) {
        mass += v;
        square += v * v;
        frac += d * d;
        power += v.powi(p2);
    }
    Ok(ConservedSnapshot {
        i0: mass * h,
        i1: (square + 1.25 * frac) * h,
        hamiltonian: 0.5 * (square + power / p2 as f64 + 0.75 * frac) * h,
    })
}
