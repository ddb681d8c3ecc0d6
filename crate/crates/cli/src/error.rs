//! CLI error type with exit-code mapping: configuration and usage problems
//! exit with 2, runtime failures with 1.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad config file, bad flag combination, or invalid parameter values.
    #[error("config error: {0}")]
    Config(String),
    /// Failure while running a valid configuration (I/O, numerics).
    #[error("error: {0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<dualband_delay::Error> for CliError {
    fn from(e: dualband_delay::Error) -> Self {
        match e {
            // Invalid grid/band/estimator parameters surface as config
            // errors: the fix is in the user's input, not the run.
            dualband_delay::Error::Config(msg) => CliError::Config(msg),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
