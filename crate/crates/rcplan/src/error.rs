use std::path::PathBuf;

use rcplan_core::cube::{CubeError, InvalidArray, InvalidFactored};
use rcplan_core::heuristics::HeuristicError;
use rcplan_core::oracle::InvalidReason;
use rcplan_core::pddl::PddlError;
use rcplan_core::scramble::ScrambleError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },
    #[error("{path}: {source}")]
    Toml { path: PathBuf, source: toml::de::Error },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Pddl { path: PathBuf, source: PddlError },
    #[error(transparent)]
    Heuristic(#[from] HeuristicError),
    #[error(transparent)]
    Scramble(#[from] ScrambleError),
    #[error(transparent)]
    Cube(#[from] CubeError),
    #[error("invalid sticker array: {0}")]
    Stickers(#[from] InvalidArray),
    #[error("invalid factored state: {0}")]
    Factored(#[from] InvalidFactored),
    #[error("invalid plan: {0:?}")]
    InvalidPlan(InvalidReason),
    #[error("{path}: bad PDB cache file: {message}")]
    PdbCache { path: PathBuf, message: String },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Error {
        Error::Io { path: path.into(), source }
    }
}

/// Reads a whole file, attaching the path to any error.
pub fn read_to_string(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}
