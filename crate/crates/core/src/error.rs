use std::path::PathBuf;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate vector: zero L2 norm")]
    DegenerateVector,

    #[error("empty vector: dimension must be at least 1")]
    EmptyVector,

    #[error("non-finite entry at index {index}")]
    NonFinite { index: usize },

    #[error("vector not normalized: squared norm {norm_sq} deviates from 1 beyond tolerance")]
    NotNormalized { norm_sq: f64 },

    #[error("value {value} outside the encodable domain [-1, 1]")]
    Domain { value: f64 },

    #[error("angle {theta} outside [0, 2π]")]
    AngleRange { theta: f64 },

    #[error("probability {p} outside [0, 1]")]
    Probability { p: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("zero row {row} in {matrix}")]
    ZeroRow { matrix: &'static str, row: usize },

    #[error("nothing to export")]
    EmptyExport,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by bad input or configuration rather than the environment.
    pub fn is_validation(&self) -> bool {
        !matches!(self, Error::Io { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
