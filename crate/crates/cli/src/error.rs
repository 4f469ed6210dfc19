use thiserror::Error;

/// Failure of a CLI command, carrying its process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<mlcap_core::Error> for CliError {
    fn from(e: mlcap_core::Error) -> Self {
        use mlcap_core::Error as E;
        match e {
            E::CapExceeded { .. } | E::Overflow(_) => CliError::Cap(e.to_string()),
            E::Io(msg) => CliError::Io(msg),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
