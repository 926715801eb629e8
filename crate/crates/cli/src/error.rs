use std::path::PathBuf;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: duplicate point at ({x}, {y})")]
    DuplicatePoint { line: usize, x: i64, y: i64 },
    #[error("line {line}: coordinate ({x}, {y}) outside +/-2^30")]
    CoordinateOutOfRange { line: usize, x: i64, y: i64 },
    #[error("query {index}: {message}")]
    InvalidQuery { index: usize, message: String },
    #[error("query {index}: {source}")]
    NotCanonical {
        index: usize,
        source: polyret::Error,
    },
    #[error("two-layer engine: {0}")]
    EngineCapExceeded(polyret::Error),
    #[error("{0}")]
    Geometry(#[from] polyret::Error),
    #[error("index file: {0}")]
    Index(String),
}

impl CliError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}
