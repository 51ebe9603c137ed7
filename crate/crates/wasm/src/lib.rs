//! WebAssembly bindings behind the demo page in `www/`.
//!
//! Three operations are exposed: parameter classification, a Petviashvili
//! solve, and a [`Simulation`] that steps a computed soliton forward in time.
//! The `try_*` functions carry the logic and are usable (and tested) natively.

use gfbbm::{
    conserved_quantities, default_seed, forward_transform, inverse_transform, make_grid, rk4_step,
    solve, validate_params, ModelParams, SolverConfig, Spectrum, WaveProfile,
};
use wasm_bindgen::prelude::*;

fn js(e: String) -> JsError {
    JsError::new(&e)
}

pub fn try_check_parameters(alpha: f64, p: u32, c: f64) -> Result<String, String> {
    let params = ModelParams::new(alpha, p, c).map_err(|e| e.to_string())?;
    let report = validate_params(&params).map_err(|e| e.to_string())?;
    let verdict = if report.admissible {
        "solitary waves exist"
    } else {
        "no positive solitary wave"
    };
    Ok(format!("{report}: {verdict}"))
}

/// Classifies `(alpha, p, c)`, e.g. `"NONEXIST_CASE_I: no positive solitary wave"`.
#[wasm_bindgen(js_name = checkParameters)]
pub fn check_parameters(alpha: f64, p: u32, c: f64) -> Result<String, JsError> {
    try_check_parameters(alpha, p, c).map_err(js)
}

/// A converged (or abandoned) Petviashvili run.
#[wasm_bindgen]
pub struct Solution {
    x: Vec<f64>,
    q: Vec<f64>,
    errors: Vec<f64>,
    residuals: Vec<f64>,
    converged: bool,
    iterations: usize,
}

#[wasm_bindgen]
impl Solution {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn q(&self) -> Vec<f64> {
        self.q.clone()
    }

    /// `‖Q_n - Q_{n-1}‖_∞` per iteration.
    #[wasm_bindgen(getter)]
    pub fn errors(&self) -> Vec<f64> {
        self.errors.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn residuals(&self) -> Vec<f64> {
        self.residuals.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn converged(&self) -> bool {
        self.converged
    }

    #[wasm_bindgen(getter)]
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    #[wasm_bindgen(getter)]
    pub fn amplitude(&self) -> f64 {
        self.q.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v))
    }
}

fn solve_wave(
    alpha: f64,
    p: u32,
    c: f64,
    n_points: usize,
    half_length: f64,
) -> Result<(ModelParams, WaveProfile, Solution), String> {
    let params = ModelParams::new(alpha, p, c).map_err(|e| e.to_string())?;
    let grid = make_grid(n_points, half_length).map_err(|e| e.to_string())?;
    let seed = default_seed(&grid, &params).map_err(|e| e.to_string())?;
    let result = solve(&seed, &params, &SolverConfig::default()).map_err(|e| e.to_string())?;
    let solution = Solution {
        x: grid.nodes().to_vec(),
        q: result.profile.values().to_vec(),
        errors: result.history.iter().map(|r| r.increment_error).collect(),
        residuals: result.history.iter().map(|r| r.residual_error).collect(),
        converged: result.converged,
        iterations: result.iterations_used,
    };
    Ok((params, result.profile, solution))
}

pub fn try_solve_profile(
    alpha: f64,
    p: u32,
    c: f64,
    n_points: usize,
    half_length: f64,
) -> Result<Solution, String> {
    solve_wave(alpha, p, c, n_points, half_length).map(|(_, _, s)| s)
}

/// Solitary-wave profile on `n_points` nodes of `[-half_length, half_length)`.
#[wasm_bindgen(js_name = solveProfile)]
pub fn solve_profile(
    alpha: f64,
    p: u32,
    c: f64,
    n_points: usize,
    half_length: f64,
) -> Result<Solution, JsError> {
    try_solve_profile(alpha, p, c, n_points, half_length).map_err(js)
}

/// A soliton advected by the RK4 scheme, stepped on demand.
#[wasm_bindgen]
pub struct Simulation {
    params: ModelParams,
    state: Spectrum,
    profile: WaveProfile,
    time: f64,
    initial_i1: f64,
}

impl Simulation {
    pub fn try_new(
        alpha: f64,
        p: u32,
        c: f64,
        n_points: usize,
        half_length: f64,
    ) -> Result<Simulation, String> {
        let (params, profile, solution) = solve_wave(alpha, p, c, n_points, half_length)?;
        if !solution.converged {
            return Err(format!(
                "solver did not converge in {} iterations",
                solution.iterations
            ));
        }
        let initial_i1 = conserved_quantities(&profile, &params)
            .map_err(|e| e.to_string())?
            .i1;
        Ok(Simulation {
            params,
            state: forward_transform(&profile),
            profile,
            time: 0.0,
            initial_i1,
        })
    }

    pub fn try_advance(&mut self, steps: u32, dt: f64) -> Result<(), String> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(format!("dt must be positive, got {dt}"));
        }
        for _ in 0..steps {
            self.state = rk4_step(&self.state, &self.params, dt).map_err(|e| e.to_string())?;
            self.time += dt;
        }
        self.profile = inverse_transform(&self.state).map_err(|e| e.to_string())?;
        Ok(())
    }

    pub fn try_i1_drift(&self) -> Result<f64, String> {
        let q = conserved_quantities(&self.profile, &self.params).map_err(|e| e.to_string())?;
        Ok((q.i1 - self.initial_i1) / self.initial_i1.abs())
    }
}

#[wasm_bindgen]
impl Simulation {
    #[wasm_bindgen(constructor)]
    pub fn new(
        alpha: f64,
        p: u32,
        c: f64,
        n_points: usize,
        half_length: f64,
    ) -> Result<Simulation, JsError> {
        Simulation::try_new(alpha, p, c, n_points, half_length).map_err(js)
    }

    /// Takes `steps` RK4 steps of size `dt`.
    pub fn advance(&mut self, steps: u32, dt: f64) -> Result<(), JsError> {
        self.try_advance(steps, dt).map_err(js)
    }

    #[wasm_bindgen(getter)]
    pub fn time(&self) -> f64 {
        self.time
    }

    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.profile.grid().nodes().to_vec()
    }

    #[wasm_bindgen(getter)]
    pub fn u(&self) -> Vec<f64> {
        self.profile.values().to_vec()
    }

    /// Relative change of `I_1` since `t = 0`.
    #[wasm_bindgen(js_name = i1Drift)]
    pub fn i1_drift(&self) -> Result<f64, JsError> {
        self.try_i1_drift().map_err(js)
    }
}
