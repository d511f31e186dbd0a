use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid medium: {0}")]
    InvalidMedium(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("argument outside supported domain: {0}")]
    Domain(String),

    #[error("singular evaluation: {0}")]
    Singularity(String),

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("shape mismatch: expected {expected}, got {got}")]
    Shape { expected: usize, got: usize },

    #[error("metric undefined: {0}")]
    Metric(String),

    #[error("malformed input at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the CLI: 2 for configuration and input
    /// problems, 3 for numeric or domain failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Singularity(_) | Error::Metric(_) => 3,
            Error::InvalidMedium(_)
            | Error::Config(_)
            | Error::Geometry(_)
            | Error::Shape { .. }
            | Error::Parse { .. }
            | Error::Io(_)
            | Error::Json(_) => 2,
        }
    }
}
