//! Layout engine for the two pointer-anchored context methods.
//!
//! Everything here is a pure function of its inputs; callers drive the frame
//! loop and rendering.

mod color;
mod dynamic;
mod minimap;
mod settings;
mod state;
mod window;

pub use color::{ParseColorError, Rgba};
pub use dynamic::{
    crosshair_segments, dim_region, layout_dynamic_context, place_oa, Crosshair, OverlayLayout,
    Projection,
};
pub use minimap::{layout_minimap, MinimapLayout};
pub use settings::{Corner, MinimapSettings, OverlaySettings, SettingError, SettingValue};
pub use state::{toggle_context, FrameLayout, InputEvent, OverlayState};
pub use window::{project_axis_window, AxisWindow};
