use thiserror::Error;

/// Failures of the scenario runner, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or malformed config, unknown preset, I/O failure. Exit 1.
    #[error("{0}")]
    Parse(String),

    /// The scenario parses but violates a precondition. Exit 2.
    #[error("validation failed:\n  {}", .0.join("\n  "))]
    Validation(Vec<String>),

    /// The spectral propagator or a quadrature did not converge. Exit 3.
    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 1,
            CliError::Validation(_) => 2,
            CliError::NonConvergence(_) => 3,
        }
    }

    pub(crate) fn io(what: &str, err: std::io::Error) -> Self {
        CliError::Parse(format!("{what}: {err}"))
    }
}

impl From<photon_prop::Error> for CliError {
    fn from(e: photon_prop::Error) -> Self {
        match e {
            photon_prop::Error::NonConvergence(msg) => CliError::NonConvergence(msg),
            other => CliError::Validation(vec![other.to_string()]),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
