use std::io;

/// Errors of the command-line layer, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error("{source_name}:{line}: {message}")]
    Parse { source_name: String, line: usize, message: String },
    #[error(transparent)]
    Domain(#[from] indefinite_core::Error),
}

impl CliError {
    /// 1 for I/O, 2 for usage and parse errors, 3 for domain violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Domain(_) => 3,
        }
    }

    pub fn io(path: impl Into<String>, source: io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    pub fn parse(source_name: &str, line: usize, message: impl Into<String>) -> Self {
        CliError::Parse { source_name: source_name.to_string(), line, message: message.into() }
    }
}

pub type CliResult<T> = Result<T, CliError>;
