//! On-disk and on-wire encodings of the core types.

pub mod annotation;
pub mod layout;
pub mod questions;
pub mod session;
pub mod settings;
pub mod table;
pub mod trace;

use serde::de::DeserializeOwned;
use thiserror::Error;

/// A JSON document that failed to decode, located by field path.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} (at {path})")]
pub struct JsonError {
    /// Dotted path of the offending field; `.` for the document root.
    pub path: String,
    pub message: String,
}

/// Decodes JSON, reporting the field path of the first error.
pub fn from_json<T: DeserializeOwned>(bytes: &[u8]) -> Result<T, JsonError> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    let value = serde_path_to_error::deserialize(&mut de).map_err(|e| JsonError {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    de.end().map_err(|e| JsonError {
        path: ".".into(),
        message: e.to_string(),
    })?;
    Ok(value)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("in-memory JSON encoding cannot fail");
    s.push('\n');
    s
}
