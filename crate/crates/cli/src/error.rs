use hollowpoly::GeomError;
use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid document: {0}")]
    Document(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Geom(#[from] GeomError),

    #[error("resource cap exceeded: {0}")]
    Cap(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Cap(_) | CliError::Geom(GeomError::CapExceeded(_) | GeomError::Overflow) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Json(_) => "json",
            CliError::Document(_) => "document",
            CliError::Usage(_) => "usage",
            CliError::Geom(GeomError::CapExceeded(_)) | CliError::Cap(_) => "cap-exceeded",
            CliError::Geom(GeomError::Overflow) => "overflow",
            CliError::Geom(_) => "geometry",
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({ "error": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() })
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
