//! Session logs: one quiz session with its per-question outcomes.

use chartlens_core::quiz::QuizSession;

use super::{from_json, to_json, JsonError};

pub fn load_session(bytes: &[u8]) -> Result<QuizSession, JsonError> {
    from_json(bytes)
}

pub fn session_to_json(session: &QuizSession) -> String {
    to_json(session)
}

/// File name under which a session log is stored.
pub fn session_file_name(session: &QuizSession) -> String {
    format!(
        "P{}_{}_{}.session.json",
        session.participant_id, session.condition, session.variant_tag
    )
}
