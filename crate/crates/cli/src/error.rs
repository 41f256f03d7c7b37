use bbar_core::{ClassifyError, HeigError, TensorError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Tensor(#[from] TensorError),

    /// Valid input, but the request cannot be carried out for it.
    #[error("{0}")]
    Infeasible(String),

    #[error(transparent)]
    Classify(#[from] ClassifyError),

    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

impl From<HeigError> for CliError {
    fn from(e: HeigError) -> Self {
        CliError::Infeasible(e.to_string())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Infeasible(_) | CliError::Classify(_) => 2,
            _ => 1,
        }
    }
}
