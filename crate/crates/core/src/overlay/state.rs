use serde::{Deserialize, Serialize};

use super::dynamic::{layout_dynamic_context, OverlayLayout};
use super::minimap::{layout_minimap, MinimapLayout};
use super::settings::{MinimapSettings, OverlaySettings};
use crate::annotation::ChartAnnotation;
use crate::condition::Condition;
use crate::geom::{Point, Rect};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputEvent {
    LeftClick,
    /// Keyboard alternative to the click.
    ToggleKey,
    RightClick,
}

/// Active method plus the settings of both methods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OverlayState {
    pub method: Condition,
    pub dynamic_context: OverlaySettings,
    pub minimap: MinimapSettings,
}

impl Default for OverlayState {
    fn default() -> Self {
        Self::new(Condition::DynamicContext)
    }
}

/// What to draw for one pointer position.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "kebab-case")]
pub enum FrameLayout {
    Hidden,
    DynamicContext(OverlayLayout),
    MiniMap(MinimapLayout),
}

impl OverlayState {
    pub fn new(method: Condition) -> Self {
        Self {
            method,
            dynamic_context: OverlaySettings::default(),
            minimap: MinimapSettings::default(),
        }
    }

    pub fn enabled(&self) -> bool {
        match self.method {
            Condition::Baseline => false,
            Condition::DynamicContext => self.dynamic_context.context_enabled,
            Condition::MiniMap => self.minimap.enabled,
        }
    }

    pub fn layout(
        &self,
        pointer: Point,
        annotation: &ChartAnnotation,
        chart_rect: &Rect,
    ) -> FrameLayout {
        let frame = match self.method {
            Condition::Baseline => None,
            Condition::DynamicContext => {
                layout_dynamic_context(pointer, &self.dynamic_context, annotation, chart_rect)
                    .map(FrameLayout::DynamicContext)
            }
            Condition::MiniMap => layout_minimap(pointer, &self.minimap, annotation, chart_rect)
                .map(FrameLayout::MiniMap),
        };
        frame.unwrap_or(FrameLayout::Hidden)
    }
}

/// Left click (or its keyboard alternative) flips the active method's
/// visibility flag; nothing else changes. Baseline has nothing to toggle.
pub fn toggle_context(state: &OverlayState, event: InputEvent) -> OverlayState {
    let mut next = state.clone();
    if matches!(event, InputEvent::LeftClick | InputEvent::ToggleKey) {
        match next.method {
            Condition::Baseline => {}
            Condition::DynamicContext => {
                next.dynamic_context.context_enabled = !next.dynamic_context.context_enabled
            }
            Condition::MiniMap => next.minimap.enabled = !next.minimap.enabled,
        }
    }
    next
}
