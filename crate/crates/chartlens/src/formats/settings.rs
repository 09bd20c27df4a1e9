//! Settings documents: the active method plus both methods' settings.

use chartlens_core::overlay::{OverlayState, SettingError};
use thiserror::Error;

use super::{from_json, to_json, JsonError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SettingsError {
    #[error("malformed settings: {0}")]
    Malformed(#[from] JsonError),
    #[error("{section}: {source}")]
    OutOfRange {
        section: &'static str,
        source: SettingError,
    },
}

/// Decodes a settings document; absent fields take their defaults.
pub fn load_settings(bytes: &[u8]) -> Result<OverlayState, SettingsError> {
    let state: OverlayState = from_json(bytes)?;
    validate_state(&state)?;
    Ok(state)
}

pub fn validate_state(state: &OverlayState) -> Result<(), SettingsError> {
    state
        .dynamic_context
        .validate()
        .map_err(|source| SettingsError::OutOfRange {
            section: "dynamic_context",
            source,
        })?;
    state
        .minimap
        .validate()
        .map_err(|source| SettingsError::OutOfRange {
            section: "minimap",
            source,
        })
}

pub fn settings_to_json(state: &OverlayState) -> String {
    to_json(state)
}
