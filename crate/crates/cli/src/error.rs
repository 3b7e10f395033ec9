use thiserror::Error;

use qsaa_core::Error as CoreError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("output failed: {0}")]
    Output(#[from] std::io::Error),
    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid input: {0}")]
    Usage(String),
    #[error("{what} has dimension {dim}, above the limit {limit}; raise --max-closure-dim to proceed")]
    ClosureGuard { what: String, dim: usize, limit: usize },
    #[error("cannot start worker pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e {
                CoreError::Resource(_) => 3,
                CoreError::InvariantViolation(_)
                | CoreError::Torsion(_)
                | CoreError::NotSimple(_)
                | CoreError::RelationFailure(_) => 1,
                _ => 2,
            },
            CliError::ClosureGuard { .. } => 3,
            CliError::Output(_) | CliError::Csv(_) | CliError::Pool(_) => 1,
            CliError::Read { .. } | CliError::Json(_) | CliError::Usage(_) => 2,
        }
    }
}
