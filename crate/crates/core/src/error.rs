use std::path::PathBuf;

use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// `1 - t^2 υ(a) υ(ā)` vanishes for the named edge.
    #[error("weighted matrices have a pole at t = {t}: edge {edge} has 1 - t^2 υ(a)υ(ā) = 0")]
    Singularity { edge: usize, t: Complex64 },

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// 2 for I/O and malformed input, 3 for domain violations, 4 for
    /// numerical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. } | Error::Input(_) | Error::Io { .. } => 2,
            Error::Precondition(_) | Error::Singularity { .. } | Error::Resource(_) => 3,
            Error::Numerical(_) => 4,
        }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
