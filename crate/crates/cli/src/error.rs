use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("cannot read config file {path}: {source}")]
    ReadConfig { path: PathBuf, source: io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: io::Error },

    #[error("solver aborted in case `{case}`: {source}")]
    Solver {
        case: String,
        #[source]
        source: gasdyn_core::Error,
    },
}

impl CliError {
    /// Process exit status: 1 for configuration and IO problems, 2 when the
    /// numerics fail.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Solver { .. } => 2,
            _ => 1,
        }
    }
}

impl From<gasdyn_core::Error> for CliError {
    fn from(e: gasdyn_core::Error) -> Self {
        CliError::Config(e.to_string())
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
