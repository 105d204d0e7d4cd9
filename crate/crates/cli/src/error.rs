use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad configuration or arguments; exit status 2.
    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Runtime(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<dipolenet_core::Error> for CliError {
    fn from(e: dipolenet_core::Error) -> Self {
        use dipolenet_core::Error::*;
        match e {
            InvalidConfig { .. } | InvalidCandidateSet { .. } => CliError::Config(e.to_string()),
            other => CliError::Runtime(other.into()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.into())
    }
}
