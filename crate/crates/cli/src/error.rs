use std::process::ExitCode;

use qiopa::QiopaError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flags, config or parameters; nothing is written.
    #[error("{0}")]
    Usage(String),
    /// The run finished but a numerical check missed its tolerance.
    #[error("{0}")]
    Tolerance(String),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Tolerance(_) => ExitCode::from(1),
        }
    }
}

impl From<QiopaError> for CliError {
    fn from(e: QiopaError) -> Self {
        match e {
            QiopaError::CutoffInfeasible { gain, .. } => CliError::Usage(format!(
                "{e}\nthe Fock-space oracle cannot represent gain {gain}; closed-form results at this gain \
                 are available from `qiopa wigner-grid` and `qiopa correlations`"
            )),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o error: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
