//! Question bundle documents, one per question set.

use chartlens_core::quiz::QuestionBundle;

use super::{from_json, to_json, JsonError};

pub fn load_question_bundle(bytes: &[u8]) -> Result<QuestionBundle, JsonError> {
    from_json(bytes)
}

pub fn question_bundle_to_json(bundle: &QuestionBundle) -> String {
    to_json(bundle)
}
