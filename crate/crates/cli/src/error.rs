use std::path::PathBuf;

/// Failures surfaced by the command layer, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}{stage} failed: {source}", chain_prefix(.chain_id))]
    Stage {
        stage: &'static str,
        chain_id: Option<String>,
        #[source]
        source: hamtraj::Error,
    },
    #[error("cannot access {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("report {path}: {message}")]
    Report { path: PathBuf, message: String },
}

fn chain_prefix(id: &Option<String>) -> String {
    id.as_ref().map(|id| format!("chain {id}: ")).unwrap_or_default()
}

impl CliError {
    pub fn stage(stage: &'static str, source: hamtraj::Error) -> Self {
        CliError::Stage { stage, chain_id: None, source }
    }

    pub fn chain(stage: &'static str, chain_id: &str, source: hamtraj::Error) -> Self {
        CliError::Stage { stage, chain_id: Some(chain_id.to_string()), source }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }

    /// 1 for I/O, 2 for bad input or arguments, 3 for numerical breakdown.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Stage { source, .. } if source.is_io() => 1,
            CliError::Stage { source, .. } if source.is_numerical() => 3,
            CliError::Stage { .. } | CliError::Invalid(_) | CliError::Report { .. } => 2,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
