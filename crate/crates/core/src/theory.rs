//! Analytical facts about solitary waves turned into executable checks:
//! parameter admissibility, the closed-form `α = 1, p = 1` soliton, two
//! Pohozaev-type identities and the scaling to the normalized ground state.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::ModelParams;
use crate::spectral::{apply_fractional, interpolate, SpectralGrid, WaveProfile};

const C_LOWER: f64 = 0.6;
const C_UPPER: f64 = 1.0;

/// One finding of [`validate_params`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Finding {
    /// `c ∈ (3/5, 1)` and `α ≥ p/(p+2)`.
    NonexistCaseI,
    /// `c ∉ [3/5, 1]` and `α ≤ p/(p+2)`.
    NonexistCaseII,
    /// `c = 3/5` or `c = 1`.
    NonexistCaseIII,
    /// `c ≤ 1` outside the three nonexistence cases: no positive wave.
    NoPositiveWave,
    /// `p ≥ p_max(α)`.
    SupercriticalP,
    /// `α < p/(p+2)`: the Hamiltonian is not controlled by the energy norm.
    HamiltonianIllDefined,
    Ok,
}

impl Finding {
    pub fn tag(self) -> &'static str {
        match self {
            Finding::NonexistCaseI => "NONEXIST_CASE_I",
            Finding::NonexistCaseII => "NONEXIST_CASE_II",
            Finding::NonexistCaseIII => "NONEXIST_CASE_III",
            Finding::NoPositiveWave => "NO_POSITIVE_WAVE",
            Finding::SupercriticalP => "SUPERCRITICAL_P",
            Finding::HamiltonianIllDefined => "HAMILTONIAN_ILL_DEFINED",
            Finding::Ok => "OK",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        [
            Finding::NonexistCaseI,
            Finding::NonexistCaseII,
            Finding::NonexistCaseIII,
            Finding::NoPositiveWave,
            Finding::SupercriticalP,
            Finding::HamiltonianIllDefined,
            Finding::Ok,
        ]
        .into_iter()
        .find(|f| f.tag() == tag)
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Outcome of [`validate_params`].
///
/// `reasons[0]` is the region classification (one of the three nonexistence
/// cases, `NoPositiveWave` or `Ok`); supplementary findings follow it.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibilityReport {
    pub admissible: bool,
    pub reasons: Vec<Finding>,
    /// Critical exponent `p_max(α)`; infinite for `α ≥ 1`.
    pub p_max: f64,
}

impl AdmissibilityReport {
    pub fn primary(&self) -> Finding {
        self.reasons[0]
    }

    pub fn contains(&self, finding: Finding) -> bool {
        self.reasons.contains(&finding)
    }
}

impl fmt::Display for AdmissibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tags: Vec<&str> = self.reasons.iter().map(|r| r.tag()).collect();
        f.write_str(&tags.join(", "))
    }
}

/// `p_max(α) = 2α/(1-α)` for `α < 1`, infinite otherwise.
pub fn critical_exponent(alpha: f64) -> f64 {
    if alpha < 1.0 {
        2.0 * alpha / (1.0 - alpha)
    } else {
        f64::INFINITY
    }
}

/// Classifies `(α, p, c)` against the nonexistence theorem, the positivity
/// condition `c > 1` and the critical exponent.
///
/// Boundaries are compared exactly on the given floating-point values, with
/// `p/(p+2)` formed by a single correctly rounded division. `p ≥ p_max(α)` is
/// evaluated through its equivalent form `α ≤ p/(p+2)` (for `α < 1`) so the
/// two thresholds can never disagree by rounding.
pub fn validate_params(params: &ModelParams) -> Result<AdmissibilityReport> {
    let ModelParams { alpha, p, speed: c } = *params;
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in (0, 2), got {alpha}"
        )));
    }
    if p < 1 {
        return Err(Error::InvalidParameter("p must be at least 1".into()));
    }
    if !c.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "speed must be finite, got {c}"
        )));
    }
    let threshold = p as f64 / (p as f64 + 2.0);

    let region = if c == C_LOWER || c == C_UPPER {
        Finding::NonexistCaseIII
    } else if c > C_LOWER && c < C_UPPER && alpha >= threshold {
        Finding::NonexistCaseI
    } else if !(C_LOWER..=C_UPPER).contains(&c) && alpha <= threshold {
        Finding::NonexistCaseII
    } else if c <= C_UPPER {
        Finding::NoPositiveWave
    } else {
        Finding::Ok
    };

    let mut reasons = vec![region];
    if alpha < 1.0 && alpha <= threshold {
        reasons.push(Finding::SupercriticalP);
    }
    if alpha < threshold {
        reasons.push(Finding::HamiltonianIllDefined);
    }
    Ok(AdmissibilityReport {
        admissible: reasons == [Finding::Ok],
        reasons,
        p_max: critical_exponent(alpha),
    })
}

/// Closed-form solitary wave for `α = 1`, `p = 1`:
///
/// ```text
/// Q(x, t) = 4(c-1) / (1 + [4(c-1)/(5c-3)]² (x - ct)²)
/// ```
pub fn exact_soliton(x: f64, t: f64, c: f64) -> Result<f64> {
    if !(c > C_LOWER) {
        return Err(Error::InvalidParameter(format!(
            "closed-form soliton needs c > 3/5, got {c}"
        )));
    }
    let amplitude = 4.0 * (c - 1.0);
    let inv_width = amplitude / (5.0 * c - 3.0);
    let xi = x - c * t;
    Ok(amplitude / (1.0 + inv_width * inv_width * xi * xi))
}

/// Samples [`exact_soliton`] on a grid.
pub fn exact_soliton_profile(grid: &SpectralGrid, t: f64, c: f64) -> Result<WaveProfile> {
    exact_soliton(0.0, 0.0, c)?;
    WaveProfile::from_fn(grid, |x| exact_soliton(x, t, c).unwrap_or(f64::NAN))
}

/// `4p(c-1) / ((5c-3)(α(p+2) - p))`, the Pohozaev ratio between
/// `∫|D^{α/2}Q|²` and `∫Q²`.
pub fn pohozaev_ratio(params: &ModelParams) -> Result<f64> {
    let ModelParams { alpha, p, speed: c } = *params;
    let p = p as f64;
    let singular = alpha * (p + 2.0) - p;
    if singular == 0.0 {
        return Err(Error::InvalidParameter(
            "alpha(p+2) = p makes the Pohozaev ratio singular".into(),
        ));
    }
    if 5.0 * c - 3.0 == 0.0 {
        return Err(Error::InvalidParameter(
            "c = 3/5 makes the Pohozaev ratio singular".into(),
        ));
    }
    Ok(4.0 * p * (c - 1.0) / ((5.0 * c - 3.0) * singular))
}

/// `∫|D^{α/2}q|²` and `∫q²` by the rectangle rule.
fn energy_integrals(q: &WaveProfile, alpha: f64) -> Result<(f64, f64)> {
    let half = apply_fractional(q, 0.5 * alpha)?;
    let h = q.grid().spacing();
    let frac = half.values().iter().map(|v| v * v).sum::<f64>() * h;
    let square = q.values().iter().map(|v| v * v).sum::<f64>() * h;
    Ok((frac, square))
}

fn relative_defect(terms: &[f64], combination: f64) -> f64 {
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    if scale == 0.0 {
        0.0
    } else {
        combination.abs() / scale
    }
}

/// Relative defect of `∫|D^{α/2}q|² = ratio · ∫q²`. Scale invariant in `q`.
pub fn pohozaev_check(q: &WaveProfile, params: &ModelParams) -> Result<f64> {
    let ratio = pohozaev_ratio(params)?;
    let (frac, square) = energy_integrals(q, params.alpha)?;
    Ok(relative_defect(
        &[frac, ratio * square],
        frac - ratio * square,
    ))
}

/// Relative defect of
/// `(5c/4 - 3/4)∫|D^{α/2}q|² + (c-1)∫q² = ½∫q^{p+2}`.
pub fn energy_identity_check(q: &WaveProfile, params: &ModelParams) -> Result<f64> {
    let c = params.speed;
    let (frac, square) = energy_integrals(q, params.alpha)?;
    let h = q.grid().spacing();
    let p2 = params.p as i32 + 2;
    let power = q.values().iter().map(|v| v.powi(p2)).sum::<f64>() * h;
    let terms = [(1.25 * c - 0.75) * frac, (c - 1.0) * square, 0.5 * power];
    Ok(relative_defect(&terms, terms[0] + terms[1] - terms[2]))
}

/// Amplitude factor `(2(c-1))^{1/p}` and argument factor
/// `(4(c-1)/(5c-3))^{1/α}` of the ground-state scaling.
pub fn scaling_factors(params: &ModelParams) -> Result<(f64, f64)> {
    let c = params.speed;
    if c == C_LOWER || c == C_UPPER {
        return Err(Error::InvalidParameter(format!(
            "ground-state scaling is undefined at c = {c}"
        )));
    }
    if !(c > C_UPPER) {
        return Err(Error::InvalidParameter(format!(
            "ground-state scaling needs c > 1, got {c}"
        )));
    }
    let amplitude = (2.0 * (c - 1.0)).powf(1.0 / params.p as f64);
    let beta = 4.0 * (c - 1.0) / (5.0 * c - 3.0);
    Ok((amplitude, beta.powf(1.0 / params.alpha)))
}

/// Maps a solution `Q` of `D^α Q + Q - Q^{p+1} = 0` to the traveling-wave
/// profile `Q_c(ξ) = (2(c-1))^{1/p} Q(β^{1/α} ξ)`, `β = 4(c-1)/(5c-3)`,
/// sampled on `target` by trigonometric interpolation of `q_normalized`.
///
/// Interpolation costs `O(N_source · N_target)`.
pub fn ground_state_scaling(
    q_normalized: &WaveProfile,
    params: &ModelParams,
    target: &SpectralGrid,
) -> Result<WaveProfile> {
    let (amplitude, stretch) = scaling_factors(params)?;
    resample_scaled(q_normalized, target, amplitude, stretch)
}

/// Inverse of [`ground_state_scaling`].
pub fn inverse_ground_state_scaling(
    q_c: &WaveProfile,
    params: &ModelParams,
    target: &SpectralGrid,
) -> Result<WaveProfile> {
    let (amplitude, stretch) = scaling_factors(params)?;
    resample_scaled(q_c, target, 1.0 / amplitude, 1.0 / stretch)
}

fn resample_scaled(
    source: &WaveProfile,
    target: &SpectralGrid,
    amplitude: f64,
    stretch: f64,
) -> Result<WaveProfile> {
    let points: Vec<f64> = target.nodes().iter().map(|&x| stretch * x).collect();
    let values = interpolate(source, &points)
        .into_iter()
        .map(|v| amplitude * v)
        .collect();
    WaveProfile::new(target, values)
}
