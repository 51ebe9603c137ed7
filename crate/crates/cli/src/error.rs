use thiserror::Error;

/// Failure of a command, split by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments, bad config, unreadable input or unwritable output.
    #[error("{0}")]
    Usage(String),
    /// Divergence or non-convergence of the numerics.
    #[error("{0}")]
    Numerical(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numerical(_) => 1,
        }
    }
}

impl From<gfbbm::Error> for CliError {
    fn from(e: gfbbm::Error) -> Self {
        if e.is_numerical_failure() {
            CliError::Numerical(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}
