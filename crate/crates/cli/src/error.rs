use std::io;
use std::path::Path;

/// Failure of a subcommand, split by who is at fault.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments or unusable input files (exit code 2).
    #[error("{0}")]
    Input(String),
    /// Anything else (exit code 1).
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 1,
        }
    }

    /// Wraps an error raised while handling `path`.
    pub fn at(path: &Path, err: impl Into<CliError>) -> Self {
        match err.into() {
            CliError::Input(m) => CliError::Input(format!("{}: {m}", path.display())),
            CliError::Internal(m) => CliError::Internal(format!("{}: {m}", path.display())),
        }
    }
}

impl From<charcnn_core::Error> for CliError {
    fn from(e: charcnn_core::Error) -> Self {
        use charcnn_core::Error as E;
        match e {
            E::Io(io) => io.into(),
            E::Shape(_) => CliError::Internal(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        match e.kind() {
            io::ErrorKind::NotFound
            | io::ErrorKind::PermissionDenied
            | io::ErrorKind::InvalidData => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
