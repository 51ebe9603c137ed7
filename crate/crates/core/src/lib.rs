//! Solitary waves of the generalized fractional Benjamin–Bona–Mahony equation
//!
//! ```text
//! u_t + u_x + ½(u^{p+1})_x + ¾ D^α u_x + (5/4) D^α u_t = 0
//! ```
//!
//! where `D^α` is the Riesz derivative with Fourier symbol `|ξ|^α`.
//!
//! The crate is organised bottom-up:
//!
//! - [`spectral`]: periodic grids on `[-L, L)`, discrete Fourier transforms and
//!   Fourier multipliers (fractional Laplacian, `∂_x`).
//! - [`model`]: parameters, the traveling-wave residual and the conserved
//!   quantities `I_0`, `I_1` and `H`.
//! - [`theory`]: admissibility of `(α, p, c)`, the closed-form `α = 1` soliton,
//!   Pohozaev-type identity checks and the ground-state scaling.
//! - [`petviashvili`]: the stabilized fixed-point iteration generating
//!   solitary-wave profiles.
//! - [`evolution`]: RK4 time stepping of the Fourier-space ODE with
//!   conserved-quantity tracking.

pub mod error;
pub mod evolution;
pub mod model;
pub mod petviashvili;
pub mod spectral;
pub mod theory;

pub use error::{Error, Result};
pub use evolution::{evolve, rhs, rk4_step, EvolutionOptions, EvolutionTrace, TimeGrid};
pub use model::{
    conserved_quantities, nonlinear_power, residual_operator, ConservedSnapshot, ModelParams,
};
pub use petviashvili::{
    default_seed, iterate_once, solve, stabilizing_factor, IterationRecord, SolverConfig,
    SolverResult,
};
pub use spectral::{
    apply_fractional, apply_x_derivative, forward_transform, inverse_transform, make_grid,
    SpectralGrid, Spectrum, WaveProfile,
};
pub use theory::{
    energy_identity_check, exact_soliton, exact_soliton_profile, ground_state_scaling,
    inverse_ground_state_scaling, pohozaev_check, validate_params, AdmissibilityReport, Finding,
};
