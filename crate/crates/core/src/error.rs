use thiserror::Error;

use crate::evolution::EvolutionTrace;
use crate::theory::AdmissibilityReport;

/// Errors raised by the grid, operator, solver and stepper layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operands live on different grids")]
    GridMismatch,

    #[error("profile length {got} does not match grid size {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite sample at node {index}")]
    NonFinite { index: usize },

    /// The inverse transform produced a noticeably complex field.
    #[error("imaginary residue {residue:.3e} (relative) exceeds tolerance")]
    ImaginaryResidue { residue: f64 },

    #[error("stabilizing factor denominator {denominator:.3e} is degenerate")]
    DegenerateFactor { denominator: f64 },

    /// Overflow or NaN produced by an arithmetic kernel.
    #[error("numerical blow-up: {0}")]
    Blowup(String),

    #[error("iteration diverged at step {iteration}: {reason}")]
    Diverged { iteration: usize, reason: String },

    #[error("parameters are inadmissible: {0}")]
    Inadmissible(AdmissibilityReport),

    /// Time stepping blew up. The trace up to the failing step is kept.
    #[error("evolution aborted at step {step}: {reason}")]
    EvolutionAborted {
        step: usize,
        reason: String,
        partial: Box<EvolutionTrace>,
    },
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input).
    pub fn is_numerical_failure(&self) -> bool {
        matches!(
            self,
            Error::Blowup(_)
                | Error::Diverged { .. }
                | Error::DegenerateFactor { .. }
                | Error::ImaginaryResidue { .. }
                | Error::EvolutionAborted { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
