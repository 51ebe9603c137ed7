//! Periodic grids, discrete Fourier transforms and Fourier multipliers.
//!
//! The computational domain is `[-L, L)` sampled at `N` equispaced nodes
//! `x_j = -L + 2Lj/N`. Spectra use the normalization
//!
//! ```text
//! c_k = (1/N) Σ_j u_j exp(-i k X_j),   X_j = π (x_j + L) / L = 2πj/N
//! u_j =       Σ_k c_k exp( i k X_j),   k = -N/2, …, N/2 - 1
//! ```
//!
//! Coefficients are stored in FFT order (`k = 0, 1, …, N/2-1, -N/2, …, -1`)
//! and every grid carries the matching *physical* wavenumbers `κ_k = kπ/L`,
//! so multipliers are written directly in `κ` without `(π/L)` factors.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Relative size of the imaginary part tolerated when mapping a spectrum back
/// to a real profile.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

struct GridData {
    n_points: usize,
    half_length: f64,
    dealias: bool,
    nodes: Vec<f64>,
    wavenumbers: Vec<f64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

/// Uniform periodic grid on `[-L, L)` together with its wavenumbers and FFT
/// plans. Cloning is cheap; clones share the same underlying data.
#[derive(Clone)]
pub struct SpectralGrid {
    inner: Arc<GridData>,
}

impl SpectralGrid {
    pub fn new(n_points: usize, half_length: f64) -> Result<Self> {
        Self::build(n_points, half_length, false)
    }

    fn build(n_points: usize, half_length: f64, dealias: bool) -> Result<Self> {
        if n_points < 4 || !n_points.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "n_points must be even and at least 4, got {n_points}"
            )));
        }
        if !(half_length.is_finite() && half_length > 0.0) {
            return Err(Error::InvalidGrid(format!(
                "half_length must be positive and finite, got {half_length}"
            )));
        }
        let spacing = 2.0 * half_length / n_points as f64;
        let nodes = (0..n_points)
            .map(|j| -half_length + spacing * j as f64)
            .collect();
        let scale = std::f64::consts::PI / half_length;
        let wavenumbers = (0..n_points)
            .map(|i| mode_number(i, n_points) as f64 * scale)
            .collect();

        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(n_points);
        let inverse = planner.plan_fft_inverse(n_points);
        Ok(Self {
            inner: Arc::new(GridData {
                n_points,
                half_length,
                dealias,
                nodes,
                wavenumbers,
                forward,
                inverse,
            }),
        })
    }

    /// Same grid with the 2/3-rule truncation of nonlinear products switched
    /// on or off.
    pub fn with_dealiasing(&self, dealias: bool) -> Result<Self> {
        Self::build(self.n_points(), self.half_length(), dealias)
    }

    pub fn n_points(&self) -> usize {
        self.inner.n_points
    }

    pub fn half_length(&self) -> f64 {
        self.inner.half_length
    }

    pub fn length(&self) -> f64 {
        2.0 * self.inner.half_length
    }

    pub fn spacing(&self) -> f64 {
        self.length() / self.n_points() as f64
    }

    pub fn dealias(&self) -> bool {
        self.inner.dealias
    }

    pub fn nodes(&self) -> &[f64] {
        &self.inner.nodes
    }

    /// Physical wavenumbers `κ = kπ/L` in FFT storage order.
    pub fn wavenumbers(&self) -> &[f64] {
        &self.inner.wavenumbers
    }

    /// Integer mode number `k` stored at position `index`.
    pub fn mode(&self, index: usize) -> i64 {
        mode_number(index, self.n_points())
    }

    /// Storage position of mode `k`, if `k ∈ [-N/2, N/2)`.
    pub fn index_of_mode(&self, k: i64) -> Option<usize> {
        let n = self.n_points() as i64;
        if k < -n / 2 || k >= n / 2 {
            return None;
        }
        Some(k.rem_euclid(n) as usize)
    }

    /// Storage position of the unpaired `k = -N/2` mode.
    pub fn nyquist_index(&self) -> usize {
        self.n_points() / 2
    }

    fn same_as(&self, other: &SpectralGrid) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self == other
    }
}

fn mode_number(index: usize, n: usize) -> i64 {
    if index < n / 2 {
        index as i64
    } else {
        index as i64 - n as i64
    }
}

impl PartialEq for SpectralGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n_points() == other.n_points()
            && self.half_length().to_bits() == other.half_length().to_bits()
            && self.dealias() == other.dealias()
    }
}

impl fmt::Debug for SpectralGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralGrid")
            .field("n_points", &self.n_points())
            .field("half_length", &self.half_length())
            .field("dealias", &self.dealias())
            .finish()
    }
}

/// Builds the grid `x_j = -L + 2Lj/N`, `j = 0..N`.
pub fn make_grid(n_points: usize, half_length: f64) -> Result<SpectralGrid> {
    SpectralGrid::new(n_points, half_length)
}

/// Real field sampled on the nodes of a [`SpectralGrid`].
#[derive(Clone, Debug)]
pub struct WaveProfile {
    grid: SpectralGrid,
    values: Vec<f64>,
}

impl WaveProfile {
    pub fn new(grid: &SpectralGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::LengthMismatch {
                expected: grid.n_points(),
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            grid: grid.clone(),
            values,
        })
    }

    pub fn zeros(grid: &SpectralGrid) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![0.0; grid.n_points()],
        }
    }

    /// Samples `f` at every node.
    pub fn from_fn(grid: &SpectralGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.nodes().iter().map(|&x| f(x)).collect())
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn max_value(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Rectangle-rule integral `Σ u_j · 2L/N` over one period.
    pub fn integral(&self) -> f64 {
        self.values.iter().sum::<f64>() * self.grid.spacing()
    }

    /// `‖self - other‖_∞`.
    pub fn distance_sup(&self, other: &WaveProfile) -> Result<f64> {
        self.check_same_grid(other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
    }

    /// Pointwise map, validated for finiteness.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(&self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    /// Pointwise combination of two profiles on the same grid.
    pub fn zip_with(&self, other: &WaveProfile, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.check_same_grid(other)?;
        Self::new(
            &self.grid,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        )
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        self.map(|v| factor * v)
    }

    /// Periodic shift by whole nodes: `out[j] = self[j - shift]`, so a
    /// positive shift moves features to the right.
    pub fn circular_shift(&self, shift: isize) -> Self {
        let n = self.values.len() as isize;
        let s = shift.rem_euclid(n) as usize;
        let mut values = self.values.clone();
        values.rotate_right(s);
        Self {
            grid: self.grid.clone(),
            values,
        }
    }

    pub(crate) fn check_same_grid(&self, other: &WaveProfile) -> Result<()> {
        if self.grid.same_as(&other.grid) {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

/// Fourier coefficients of a field, in FFT storage order.
#[derive(Clone, Debug)]
pub struct Spectrum {
    grid: SpectralGrid,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(grid: &SpectralGrid, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.n_points() {
            return Err(Error::LengthMismatch {
                expected: grid.n_points(),
                got: coeffs.len(),
            });
        }
        if let Some(index) = coeffs
            .iter()
            .position(|c| !(c.re.is_finite() && c.im.is_finite()))
        {
            return Err(Error::NonFinite { index });
        }
        Ok(Self {
            grid: grid.clone(),
            coeffs,
        })
    }

    pub fn zeros(grid: &SpectralGrid) -> Self {
        Self {
            grid: grid.clone(),
            coeffs: vec![Complex64::new(0.0, 0.0); grid.n_points()],
        }
    }

    pub fn grid(&self) -> &SpectralGrid {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// Coefficient of mode `k ∈ [-N/2, N/2)`.
    pub fn coeff(&self, k: i64) -> Option<Complex64> {
        self.grid.index_of_mode(k).map(|i| self.coeffs[i])
    }

    /// Multiplies every coefficient by `symbol(κ)`.
    pub fn multiplied(&self, symbol: impl Fn(f64) -> Complex64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .zip(self.grid.wavenumbers())
            .map(|(c, &kappa)| c * symbol(kappa))
            .collect();
        Self {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    /// Largest deviation from `c(-k) = conj(c(k))`, relative to the largest
    /// coefficient. The unpaired `-N/2` mode must be real.
    pub fn conjugate_symmetry_defect(&self) -> f64 {
        let n = self.coeffs.len();
        let scale = self.coeffs.iter().fold(0.0_f64, |m, c| m.max(c.norm()));
        if scale == 0.0 {
            return 0.0;
        }
        let mut defect = self.coeffs[0].im.abs().max(self.coeffs[n / 2].im.abs());
        for i in 1..n / 2 {
            defect = defect.max((self.coeffs[i] - self.coeffs[n - i].conj()).norm());
        }
        defect / scale
    }

    /// Zeroes modes with `|k| > N/3` (2/3 rule).
    pub fn truncate_two_thirds(&mut self) {
        let n = self.grid.n_points() as i64;
        for (i, c) in self.coeffs.iter_mut().enumerate() {
            let k = mode_number(i, n as usize);
            if 3 * k.abs() > n {
                *c = Complex64::new(0.0, 0.0);
            }
        }
    }
}

/// Discrete Fourier transform with the `1/N` normalization on the forward side.
pub fn forward_transform(profile: &WaveProfile) -> Spectrum {
    let grid = profile.grid();
    let mut buffer: Vec<Complex64> = profile
        .values()
        .iter()
        .map(|&v| Complex64::new(v, 0.0))
        .collect();
    grid.inner.forward.process(&mut buffer);
    let inv_n = 1.0 / grid.n_points() as f64;
    for c in &mut buffer {
        *c *= inv_n;
    }
    Spectrum {
        grid: grid.clone(),
        coeffs: buffer,
    }
}

/// Inverse transform back to a real profile. Fails if the synthesized field
/// carries an imaginary part above [`IMAG_RESIDUE_TOL`] relative to its size.
pub fn inverse_transform(spectrum: &Spectrum) -> Result<WaveProfile> {
    let grid = spectrum.grid();
    let mut buffer = spectrum.coeffs().to_vec();
    grid.inner.inverse.process(&mut buffer);
    let (scale, imag) = buffer.iter().fold((0.0_f64, 0.0_f64), |(s, m), z| {
        (s.max(z.norm()), m.max(z.im.abs()))
    });
    if scale > 0.0 && imag > IMAG_RESIDUE_TOL * scale {
        return Err(Error::ImaginaryResidue {
            residue: imag / scale,
        });
    }
    WaveProfile::new(grid, buffer.into_iter().map(|z| z.re).collect())
}

/// Multiplier `|κ|^order` with the convention `|0|^0 = 1`.
pub(crate) fn fractional_symbol(kappa: f64, order: f64) -> f64 {
    if order == 0.0 {
        1.0
    } else if kappa == 0.0 {
        0.0
    } else {
        kappa.abs().powf(order)
    }
}

fn check_order(order: f64) -> Result<()> {
    if order.is_finite() && order >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "fractional order must be finite and non-negative, got {order}"
        )))
    }
}

/// Riesz fractional derivative `D^order`: Fourier multiplier `|κ|^order`.
pub fn apply_fractional(profile: &WaveProfile, order: f64) -> Result<WaveProfile> {
    check_order(order)?;
    if order == 0.0 {
        return Ok(profile.clone());
    }
    let spectrum = forward_transform(profile);
    inverse_transform(&apply_fractional_spectrum(&spectrum, order)?)
}

/// [`apply_fractional`] on coefficients.
pub fn apply_fractional_spectrum(spectrum: &Spectrum, order: f64) -> Result<Spectrum> {
    check_order(order)?;
    Ok(spectrum.multiplied(|kappa| Complex64::new(fractional_symbol(kappa, order), 0.0)))
}

/// `∂_x` via the multiplier `iκ`; the unpaired `-N/2` mode is dropped.
pub fn apply_x_derivative(profile: &WaveProfile) -> Result<WaveProfile> {
    let spectrum = forward_transform(profile);
    inverse_transform(&x_derivative_spectrum(&spectrum))
}

/// [`apply_x_derivative`] on coefficients.
pub fn x_derivative_spectrum(spectrum: &Spectrum) -> Spectrum {
    let mut out = spectrum.multiplied(|kappa| Complex64::new(0.0, kappa));
    let nyq = out.grid.nyquist_index();
    out.coeffs[nyq] = Complex64::new(0.0, 0.0);
    out
}

/// Evaluates the real trigonometric interpolant of `profile` at arbitrary
/// points (taken periodically). The `-N/2` mode contributes as a cosine.
///
/// Cost is `O(N)` per point.
pub fn interpolate(profile: &WaveProfile, points: &[f64]) -> Vec<f64> {
    let spectrum = forward_transform(profile);
    let grid = profile.grid();
    let n = grid.n_points();
    let half = grid.half_length();
    let kappas = grid.wavenumbers();
    let coeffs = spectrum.coeffs();
    points
        .iter()
        .map(|&x| {
            let shifted = x + half;
            // c_0 + 2 Re Σ_{k=1}^{N/2-1} c_k e^{iκ(x+L)} + c_{-N/2} cos(κ_{N/2}(x+L))
            let mut acc = coeffs[0].re;
            for i in 1..n / 2 {
                let phase = Complex64::from_polar(1.0, kappas[i] * shifted);
                acc += 2.0 * (coeffs[i] * phase).re;
            }
            let nyq = n / 2;
            acc + coeffs[nyq].re * (kappas[nyq] * shifted).cos()
        })
        .collect()
}
