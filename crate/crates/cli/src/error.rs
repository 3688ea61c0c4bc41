use thiserror::Error;

/// Failures of the command-line layer, each mapped to a fixed exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Math(#[from] tatehh::Error),
    #[error("{0}")]
    Property(String),
}

impl CliError {
    /// 1 usage, 2 parse, 3 mathematical precondition, 4 property failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Property(_) => 4,
            CliError::Math(e) => match e.kind() {
                tatehh::ErrorKind::Parse => 2,
                tatehh::ErrorKind::Precondition => 3,
                tatehh::ErrorKind::Property => 4,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
