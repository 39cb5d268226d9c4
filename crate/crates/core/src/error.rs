use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("chain {chain_id}: dimension mismatch (expected {expected}, found {found})")]
    DimensionMismatch {
        chain_id: String,
        expected: usize,
        found: usize,
    },
    #[error("chain {chain_id}: needs at least {needed} steps, has {found}")]
    TooFewSteps {
        chain_id: String,
        needed: usize,
        found: usize,
    },
    #[error("chain {chain_id}: non-finite vector component")]
    NonFinite { chain_id: String },
    #[error("chain {chain_id}: reference vector has zero norm")]
    ZeroReference { chain_id: String },
    #[error("duplicate chain id {0}")]
    DuplicateId(String),
    #[error("empty cohort")]
    EmptyCohort,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("insufficient group sizes: {valid} valid, {invalid} invalid (need {needed} each)")]
    InsufficientGroups {
        valid: usize,
        invalid: usize,
        needed: usize,
    },
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("no convergence: {0}")]
    NoConvergence(String),
}

impl Error {
    /// True for failures of the numerics themselves rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Singular(_) | Error::NoConvergence(_))
    }

    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
