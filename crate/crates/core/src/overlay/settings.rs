//! User-tunable settings for both interaction methods.
//!
//! Every change goes through [`OverlaySettings::apply_setting`] or
//! [`MinimapSettings::apply_setting`], which reject out-of-range values and
//! name the legal range. The engine is stateless, so the next layout call
//! reflects a change immediately.

use alloc::string::{String, ToString};
use core::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::color::Rgba;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Corner {
    TopLeft,
    TopRight,
    BottomLeft,
    BottomRight,
}

impl Corner {
    pub fn parse(s: &str) -> Option<Corner> {
        match s {
            "top-left" => Some(Corner::TopLeft),
            "top-right" => Some(Corner::TopRight),
            "bottom-left" => Some(Corner::BottomLeft),
            "bottom-right" => Some(Corner::BottomRight),
            _ => None,
        }
    }
}

/// A value supplied for a single setting key.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SettingValue {
    Number(f64),
    Flag(bool),
    Color(Rgba),
    Corner(Corner),
}

impl fmt::Display for SettingValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SettingValue::Number(v) => write!(f, "{v}"),
            SettingValue::Flag(v) => write!(f, "{v}"),
            SettingValue::Color(c) => write!(f, "{c}"),
            SettingValue::Corner(c) => write!(f, "{c:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SettingError {
    #[error("unknown setting `{0}`")]
    UnknownKey(String),
    #[error("setting `{key}` expects a {expected}")]
    WrongType { key: String, expected: &'static str },
    #[error("setting `{key}` = {value} is out of range; legal range is {range}")]
    OutOfRange {
        key: String,
        value: f64,
        range: &'static str,
    },
}

#[derive(Debug, Clone, Copy)]
enum Range {
    /// `(0, 1]`
    UnitOpenLow,
    /// `[0, 1]`
    Unit,
    /// `[0, inf)`
    NonNegative,
    /// `(0, inf)`
    Positive,
}

impl Range {
    fn contains(self, v: f64) -> bool {
        if !v.is_finite() {
            return false;
        }
        match self {
            Range::UnitOpenLow => v > 0.0 && v <= 1.0,
            Range::Unit => (0.0..=1.0).contains(&v),
            Range::NonNegative => v >= 0.0,
            Range::Positive => v > 0.0,
        }
    }

    fn describe(self) -> &'static str {
        match self {
            Range::UnitOpenLow => "(0, 1]",
            Range::Unit => "[0, 1]",
            Range::NonNegative => "[0, inf)",
            Range::Positive => "(0, inf)",
        }
    }
}

fn number(key: &str, value: SettingValue, range: Range) -> Result<f64, SettingError> {
    let SettingValue::Number(v) = value else {
        return Err(SettingError::WrongType {
            key: key.to_string(),
            expected: "number",
        });
    };
    check(key, v, range)
}

fn check(key: &str, v: f64, range: Range) -> Result<f64, SettingError> {
    if range.contains(v) {
        Ok(v)
    } else {
        Err(SettingError::OutOfRange {
            key: key.to_string(),
            value: v,
            range: range.describe(),
        })
    }
}

fn flag(key: &str, value: SettingValue) -> Result<bool, SettingError> {
    match value {
        SettingValue::Flag(b) => Ok(b),
        _ => Err(SettingError::WrongType {
            key: key.to_string(),
            expected: "flag",
        }),
    }
}

fn color(key: &str, value: SettingValue) -> Result<Rgba, SettingError> {
    match value {
        SettingValue::Color(c) => Ok(c),
        _ => Err(SettingError::WrongType {
            key: key.to_string(),
            expected: "color",
        }),
    }
}

/// Dynamic Context settings. Defaults: outer dimming on, 2 px black border,
/// axis ratio 0.30 and a black crosshair reaching the OA edges.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OverlaySettings {
    pub oa_width: f64,
    pub oa_height: f64,
    pub border_thickness: f64,
    pub border_color: Rgba,
    pub outer_dimming: bool,
    pub dimming_opacity: f64,
    pub axis_ratio: f64,
    pub crosshair_thickness: f64,
    pub crosshair_color: Rgba,
    pub crosshair_opacity: f64,
    pub crosshair_reach: f64,
    pub context_enabled: bool,
}

impl Default for OverlaySettings {
    fn default() -> Self {
        Self {
            oa_width: 0.4,
            oa_height: 0.4,
            border_thickness: 2.0,
            border_color: Rgba::BLACK,
            outer_dimming: true,
            dimming_opacity: 0.5,
            axis_ratio: 0.30,
            crosshair_thickness: 2.0,
            crosshair_color: Rgba::BLACK,
            crosshair_opacity: 1.0,
            crosshair_reach: 1.0,
            context_enabled: true,
        }
    }
}

impl OverlaySettings {
    pub const KEYS: [&'static str; 12] = [
        "oa_width",
        "oa_height",
        "border_thickness",
        "border_color",
        "outer_dimming",
        "dimming_opacity",
        "axis_ratio",
        "crosshair_thickness",
        "crosshair_color",
        "crosshair_opacity",
        "crosshair_reach",
        "context_enabled",
    ];

    pub fn apply_setting(&self, key: &str, value: SettingValue) -> Result<Self, SettingError> {
        let mut s = self.clone();
        match key {
            "oa_width" => s.oa_width = number(key, value, Range::UnitOpenLow)?,
            "oa_height" => s.oa_height = number(key, value, Range::UnitOpenLow)?,
            "border_thickness" => s.border_thickness = number(key, value, Range::NonNegative)?,
            "border_color" => s.border_color = color(key, value)?,
            "outer_dimming" => s.outer_dimming = flag(key, value)?,
            "dimming_opacity" => s.dimming_opacity = number(key, value, Range::Unit)?,
            "axis_ratio" => s.axis_ratio = number(key, value, Range::UnitOpenLow)?,
            "crosshair_thickness" => s.crosshair_thickness = number(key, value, Range::Positive)?,
            "crosshair_color" => s.crosshair_color = color(key, value)?,
            "crosshair_opacity" => s.crosshair_opacity = number(key, value, Range::Unit)?,
            "crosshair_reach" => s.crosshair_reach = number(key, value, Range::Unit)?,
            "context_enabled" => s.context_enabled = flag(key, value)?,
            _ => return Err(SettingError::UnknownKey(key.to_string())),
        }
        Ok(s)
    }

    /// Checks every numeric field; used for settings read from documents.
    pub fn validate(&self) -> Result<(), SettingError> {
        check("oa_width", self.oa_width, Range::UnitOpenLow)?;
        check("oa_height", self.oa_height, Range::UnitOpenLow)?;
        check(
            "border_thickness",
            self.border_thickness,
            Range::NonNegative,
        )?;
        check("dimming_opacity", self.dimming_opacity, Range::Unit)?;
        check("axis_ratio", self.axis_ratio, Range::UnitOpenLow)?;
        check(
            "crosshair_thickness",
            self.crosshair_thickness,
            Range::Positive,
        )?;
        check("crosshair_opacity", self.crosshair_opacity, Range::Unit)?;
        check("crosshair_reach", self.crosshair_reach, Range::Unit)?;
        Ok(())
    }
}

/// Mini-map settings. Defaults: outer dimming on, 2 px black border, map at
/// the top-right corner scaled to 30% of the OA width, black indicator at 15%
/// of the map width.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MinimapSettings {
    pub oa_width: f64,
    pub oa_height: f64,
    pub border_thickness: f64,
    pub border_color: Rgba,
    pub outer_dimming: bool,
    pub dimming_opacity: f64,
    pub corner: Corner,
    pub map_scale: f64,
    pub indicator_radius: f64,
    pub indicator_fill: Rgba,
    pub enabled: bool,
}

impl Default for MinimapSettings {
    fn default() -> Self {
        Self {
            oa_width: 0.4,
            oa_height: 0.4,
            border_thickness: 2.0,
            border_color: Rgba::BLACK,
            outer_dimming: true,
            dimming_opacity: 0.5,
            corner: Corner::TopRight,
            map_scale: 0.30,
            indicator_radius: 0.15,
            indicator_fill: Rgba::BLACK,
            enabled: true,
        }
    }
}

impl MinimapSettings {
    pub const KEYS: [&'static str; 11] = [
        "oa_width",
        "oa_height",
        "border_thickness",
        "border_color",
        "outer_dimming",
        "dimming_opacity",
        "corner",
        "map_scale",
        "indicator_radius",
        "indicator_fill",
        "enabled",
    ];

    pub fn apply_setting(&self, key: &str, value: SettingValue) -> Result<Self, SettingError> {
        let mut s = self.clone();
        match key {
            "oa_width" => s.oa_width = number(key, value, Range::UnitOpenLow)?,
            "oa_height" => s.oa_height = number(key, value, Range::UnitOpenLow)?,
            "border_thickness" => s.border_thickness = number(key, value, Range::NonNegative)?,
            "border_color" => s.border_color = color(key, value)?,
            "outer_dimming" => s.outer_dimming = flag(key, value)?,
            "dimming_opacity" => s.dimming_opacity = number(key, value, Range::Unit)?,
            "corner" => match value {
                SettingValue::Corner(c) => s.corner = c,
                _ => {
                    return Err(SettingError::WrongType {
                        key: key.to_string(),
                        expected: "corner",
                    })
                }
            },
            "map_scale" => s.map_scale = number(key, value, Range::UnitOpenLow)?,
            "indicator_radius" => s.indicator_radius = number(key, value, Range::UnitOpenLow)?,
            "indicator_fill" => s.indicator_fill = color(key, value)?,
            "enabled" => s.enabled = flag(key, value)?,
            _ => return Err(SettingError::UnknownKey(key.to_string())),
        }
        Ok(s)
    }

    pub fn validate(&self) -> Result<(), SettingError> {
        check("oa_width", self.oa_width, Range::UnitOpenLow)?;
        check("oa_height", self.oa_height, Range::UnitOpenLow)?;
        check(
            "border_thickness",
            self.border_thickness,
            Range::NonNegative,
        )?;
        check("dimming_opacity", self.dimming_opacity, Range::Unit)?;
        check("map_scale", self.map_scale, Range::UnitOpenLow)?;
        check(
            "indicator_radius",
            self.indicator_radius,
            Range::UnitOpenLow,
        )?;
        Ok(())
    }
}
