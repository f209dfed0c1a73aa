use thiserror::Error;

use crate::kripke::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("unknown atomic term `{0}`")]
    UnknownAtom(String),

    #[error("unknown proposition `{0}`")]
    UnknownProposition(String),

    #[error("unknown state `{0}`")]
    UnknownState(String),

    #[error("unknown event `{event}` in event model `{model}`")]
    UnknownEvent { model: String, event: String },

    #[error("unresolved reference `{0}`")]
    UnresolvedReference(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("invalid model:\n{0}")]
    InvalidModel(ValidationReport),

    #[error("formula contains a dynamic operator where a static formula is required: {0}")]
    DynamicOperator(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            column,
            message: message.into(),
        }
    }
}
