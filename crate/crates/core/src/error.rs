use thiserror::Error;

use crate::analysis::AnalysisError;
use crate::env::BandError;
use crate::policies::PolicyError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Band(#[from] BandError),
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error("invalid scenario: {0}")]
    Config(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("scenario json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
