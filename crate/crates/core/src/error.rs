use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("improper coloring: edge {0} -- {1} is monochromatic")]
    ImproperColoring(String, String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
