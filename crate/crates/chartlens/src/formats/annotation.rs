//! Chart annotation documents.

use chartlens_core::{validate_annotation, ChartAnnotation, Violation};
use thiserror::Error;

use super::{from_json, to_json, JsonError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnnotationError {
    #[error("malformed annotation: {0}")]
    Malformed(#[from] JsonError),
    #[error("{}", join(.0))]
    Invalid(Vec<Violation>),
}

fn join(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// Decodes and validates one annotation document.
pub fn load_annotation(bytes: &[u8]) -> Result<ChartAnnotation, AnnotationError> {
    let a: ChartAnnotation = from_json(bytes)?;
    let violations = validate_annotation(&a);
    if violations.is_empty() {
        Ok(a)
    } else {
        Err(AnnotationError::Invalid(violations))
    }
}

pub fn annotation_to_json(a: &ChartAnnotation) -> String {
    to_json(a)
}
