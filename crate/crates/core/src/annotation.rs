//! Chart annotations: bitmap size plus bounding boxes of the chart context.
//!
//! Boxes are normalized to the bitmap (`[0, 1]`, top-left origin). Axis boxes
//! cover the whole readable strip: axis line, ticks and tick labels.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

use crate::geom::Rect;

/// Largest share of the x-axis band height that may fall inside the plot area.
pub const MAX_AXIS_PLOT_OVERLAP: f64 = 0.10;

/// The twelve Mini-VLAT chart types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChartType {
    Line,
    Bar,
    StackedBar,
    #[serde(rename = "100-stacked-bar")]
    PercentStackedBar,
    Pie,
    Histogram,
    Scatter,
    Area,
    StackedArea,
    Bubble,
    Choropleth,
    Treemap,
}

impl ChartType {
    pub const ALL: [ChartType; 12] = [
        ChartType::Line,
        ChartType::Bar,
        ChartType::StackedBar,
        ChartType::PercentStackedBar,
        ChartType::Pie,
        ChartType::Histogram,
        ChartType::Scatter,
        ChartType::Area,
        ChartType::StackedArea,
        ChartType::Bubble,
        ChartType::Choropleth,
        ChartType::Treemap,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ChartType::Line => "line",
            ChartType::Bar => "bar",
            ChartType::StackedBar => "stacked-bar",
            ChartType::PercentStackedBar => "100-stacked-bar",
            ChartType::Pie => "pie",
            ChartType::Histogram => "histogram",
            ChartType::Scatter => "scatter",
            ChartType::Area => "area",
            ChartType::StackedArea => "stacked-area",
            ChartType::Bubble => "bubble",
            ChartType::Choropleth => "choropleth",
            ChartType::Treemap => "treemap",
        }
    }
}

impl fmt::Display for ChartType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartAnnotation {
    pub chart_id: String,
    pub image_width: u32,
    pub image_height: u32,
    pub chart_type: ChartType,
    pub plot_area: Rect,
    pub x_axis: Rect,
    pub y_axis: Rect,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_axis_title: Option<Rect>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_axis_title: Option<Rect>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub legend: Option<Rect>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ViolationKind {
    NonFinite,
    Inverted,
    OutsideUnitSquare,
    AxisInsidePlot { overlap_fraction: f64 },
    ZeroDimension,
    EmptyId,
}

/// One broken invariant, located by field path.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub path: String,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::NonFinite => write!(f, "non-finite coordinate at {}", self.path),
            ViolationKind::Inverted => write!(f, "inverted rect at {}", self.path),
            ViolationKind::OutsideUnitSquare => {
                write!(f, "rect outside the unit square at {}", self.path)
            }
            ViolationKind::AxisInsidePlot { overlap_fraction } => write!(
                f,
                "{} intrudes into plot_area by {:.1}% of its height (max {:.0}%)",
                self.path,
                overlap_fraction * 100.0,
                MAX_AXIS_PLOT_OVERLAP * 100.0
            ),
            ViolationKind::ZeroDimension => write!(f, "{} must be positive", self.path),
            ViolationKind::EmptyId => write!(f, "{} must not be empty", self.path),
        }
    }
}

impl ChartAnnotation {
    /// Every `(field name, rect)` pair present in the annotation.
    pub fn rects(&self) -> Vec<(&'static str, Rect)> {
        let mut out = alloc::vec![
            ("plot_area", self.plot_area),
            ("x_axis", self.x_axis),
            ("y_axis", self.y_axis),
        ];
        let optional = [
            ("x_axis_title", self.x_axis_title),
            ("y_axis_title", self.y_axis_title),
            ("legend", self.legend),
        ];
        out.extend(optional.into_iter().filter_map(|(n, r)| r.map(|r| (n, r))));
        out
    }

    /// Bitmap aspect ratio, height over width.
    pub fn aspect(&self) -> f64 {
        f64::from(self.image_height) / f64::from(self.image_width)
    }
}

/// Returns every invariant violation; empty iff the annotation is valid.
///
/// Overlaps between the legend and the plot area are legal: some charts embed
/// the legend in the data region.
pub fn validate_annotation(a: &ChartAnnotation) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |path: &str, kind| {
        out.push(Violation {
            path: path.to_string(),
            kind,
        })
    };

    if a.chart_id.trim().is_empty() {
        push("chart_id", ViolationKind::EmptyId);
    }
    if a.image_width == 0 {
        push("image_width", ViolationKind::ZeroDimension);
    }
    if a.image_height == 0 {
        push("image_height", ViolationKind::ZeroDimension);
    }

    for (name, r) in a.rects() {
        if !r.is_finite() {
            push(name, ViolationKind::NonFinite);
        } else if !r.is_ordered() {
            push(name, ViolationKind::Inverted);
        } else if !Rect::UNIT.contains_rect(&r) {
            push(name, ViolationKind::OutsideUnitSquare);
        }
    }

    let (xa, pa) = (a.x_axis, a.plot_area);
    if xa.is_finite() && pa.is_finite() && xa.is_ordered() && pa.is_ordered() {
        let overlap = (xa.y1.min(pa.y1) - xa.y0.max(pa.y0)).max(0.0);
        // A zero-height band has no interior to intrude with.
        if xa.height() > 0.0 && overlap > MAX_AXIS_PLOT_OVERLAP * xa.height() {
            push(
                "x_axis",
                ViolationKind::AxisInsidePlot {
                    overlap_fraction: overlap / xa.height(),
                },
            );
        }
    }
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn sample() -> ChartAnnotation {
        ChartAnnotation {
            chart_id: "v0-bar".into(),
            image_width: 800,
            image_height: 600,
            chart_type: ChartType::Bar,
            plot_area: Rect::new(0.1, 0.05, 0.9, 0.85),
            x_axis: Rect::new(0.05, 0.85, 0.95, 0.92),
            y_axis: Rect::new(0.02, 0.0, 0.1, 0.9),
            x_axis_title: Some(Rect::new(0.4, 0.93, 0.6, 0.99)),
            y_axis_title: Some(Rect::new(0.0, 0.3, 0.02, 0.6)),
            legend: Some(Rect::new(0.75, 0.05, 0.9, 0.2)),
        }
    }

    #[test]
    fn valid_annotation_has_no_violations() {
        assert!(validate_annotation(&sample()).is_empty());
    }

    #[test]
    fn plot_area_outside_unit_square_is_one_violation() {
        let mut a = sample();
        a.plot_area = Rect::new(0.1, 0.05, 1.2, 0.85);
        let v = validate_annotation(&a);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].path, "plot_area");
        assert_eq!(v[0].kind, ViolationKind::OutsideUnitSquare);
    }

    #[test]
    fn inverted_rect_is_reported_with_path() {
        let mut a = sample();
        a.x_axis = Rect::new(0.9, 0.85, 0.05, 0.92);
        let v = validate_annotation(&a);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].to_string(), "inverted rect at x_axis");
    }

    #[test]
    fn legend_overlapping_plot_is_legal() {
        let mut a = sample();
        a.legend = Some(Rect::new(0.5, 0.3, 0.7, 0.5));
        assert!(validate_annotation(&a).is_empty());
    }

    #[test]
    fn missing_legend_is_legal() {
        let mut a = sample();
        a.legend = None;
        assert!(validate_annotation(&a).is_empty());
    }

    #[test]
    fn x_axis_inside_plot_is_flagged() {
        let mut a = sample();
        a.x_axis = Rect::new(0.05, 0.5, 0.95, 0.6);
        let v = validate_annotation(&a);
        assert_eq!(v.len(), 1);
        assert!(matches!(v[0].kind, ViolationKind::AxisInsidePlot { .. }));
    }

    #[test]
    fn slight_axis_overlap_is_tolerated() {
        let mut a = sample();
        // 0.005 of a 0.07 band is ~7%.
        a.x_axis = Rect::new(0.05, 0.845, 0.95, 0.915);
        assert!(validate_annotation(&a).is_empty());
    }

    #[test]
    fn zero_width_image_is_flagged() {
        let mut a = sample();
        a.image_width = 0;
        let v = validate_annotation(&a);
        assert_eq!(v[0].to_string(), "image_width must be positive");
    }
}
