use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported spline order {0}: only orders 2 (linear) and 4 (cubic) are available")]
    UnsupportedOrder(u32),

    #[error("unsupported dilation {0}: expected 1, 2 or 3")]
    UnsupportedDilation(usize),

    #[error("block length {block} is shorter than atom support {support}")]
    BlockTooSmall { block: usize, support: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("pursuit exhausted: every atom is selected or linearly dependent")]
    PursuitExhausted,

    #[error("block ({row}, {col}) did not reach the target: residual SSE {sse} > {threshold}")]
    BlockNotConverged {
        row: usize,
        col: usize,
        sse: f64,
        threshold: f64,
    },

    #[error("corrupt container at byte offset {offset}: {reason}")]
    CorruptContainer { offset: usize, reason: String },

    #[error("dictionary mismatch: {0}")]
    DictionaryMismatch(String),

    #[error("malformed PGM: {0}")]
    Pgm(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("target PSNR {0} dB is unreachable")]
    UnreachableTarget(f64),

    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn in_file(self, path: impl Into<PathBuf>) -> Self {
        Error::File {
            path: path.into(),
            source: Box::new(self),
        }
    }

    /// Process exit code: 1 usage, 2 I/O, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::File { source, .. } => source.exit_code(),
            Error::Io(_) | Error::Csv(_) | Error::Pgm(_) | Error::CorruptContainer { .. } => 2,
            Error::PursuitExhausted | Error::BlockNotConverged { .. } | Error::UnreachableTarget(_) => 3,
            _ => 1,
        }
    }
}
