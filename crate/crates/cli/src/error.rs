use std::path::PathBuf;

use ordlab::ball::BallError;
use ordlab::certificate::CertificateError;
use ordlab::cones::ConeError;
use ordlab::presentation::{ParseError, WordError};
use ordlab::wordproblem::Undecided;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("invalid presentation {path}: {source}")]
    Presentation { path: String, source: ParseError },
    #[error("invalid word {word:?}: {source}")]
    Word { word: String, source: WordError },
    #[error(transparent)]
    Certificate(CertificateError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Undecided(#[from] Undecided),
    #[error(transparent)]
    Ball(#[from] BallError),
    #[error("search at radius {radius} exceeded {node_cap} nodes")]
    NodeCap { radius: usize, node_cap: u64 },
    #[error("invalid ORDLAB_THREADS value {0:?}")]
    Threads(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Undecided(_) => 3,
            CliError::Ball(_) | CliError::NodeCap { .. } => 4,
            _ => 2,
        }
    }
}
