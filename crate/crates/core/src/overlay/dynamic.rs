//! Dynamic Context: axes, axis titles and legend projected into a
//! pointer-centered Overview Area (OA), plus a crosshair at its center.
//!
//! Two coordinate spaces meet here. Annotation boxes and every `src` rect are
//! normalized to the chart bitmap. The OA, every `dst` rect and the crosshair
//! are normalized to the viewport. `chart_rect` is where the bitmap is shown
//! in the viewport, so a bitmap rect `r` occupies `chart_rect.denormalize_rect(r)`
//! on screen. Projected strips keep that on-screen size.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::settings::OverlaySettings;
use super::window::{project_axis_window, AxisWindow};
use crate::annotation::ChartAnnotation;
use crate::geom::{Point, Rect, Segment};

/// A bitmap region and where it is painted, 1:1 with the displayed chart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Projection {
    /// Bitmap-normalized crop.
    pub src: Rect,
    /// Viewport-normalized destination.
    pub dst: Rect,
}

/// Crosshair arms from the OA center, in order up, down, left, right.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Crosshair {
    pub up: Segment,
    pub down: Segment,
    pub left: Segment,
    pub right: Segment,
}

impl Crosshair {
    pub fn segments(&self) -> [Segment; 4] {
        [self.up, self.down, self.left, self.right]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OverlayLayout {
    pub oa: Rect,
    pub x_window: AxisWindow,
    pub y_window: AxisWindow,
    pub x_axis: Projection,
    pub y_axis: Projection,
    pub x_title: Option<Projection>,
    pub y_title: Option<Projection>,
    pub legend: Option<Projection>,
    pub crosshair: Crosshair,
    /// Viewport minus the OA as disjoint bands; empty when dimming is off.
    pub dim_region: Vec<Rect>,
}

/// OA of the given size centered on `pointer`, slid to stay inside the viewport.
pub fn place_oa(pointer: Point, width: f64, height: f64) -> Rect {
    let w = width.clamp(0.0, 1.0);
    let h = height.clamp(0.0, 1.0);
    let x0 = (pointer.x - w / 2.0).clamp(0.0, 1.0 - w);
    let y0 = (pointer.y - h / 2.0).clamp(0.0, 1.0 - h);
    Rect::new(x0, y0, x0 + w, y0 + h)
}

/// Viewport minus `oa`: top and bottom full-width bands, then the left and
/// right bands beside the OA. Empty bands are dropped.
pub fn dim_region(oa: &Rect) -> Vec<Rect> {
    [
        Rect::new(0.0, 0.0, 1.0, oa.y0),
        Rect::new(0.0, oa.y1, 1.0, 1.0),
        Rect::new(0.0, oa.y0, oa.x0, oa.y1),
        Rect::new(oa.x1, oa.y0, 1.0, oa.y1),
    ]
    .into_iter()
    .filter(|r| r.width() > 0.0 && r.height() > 0.0)
    .collect()
}

/// Four crosshair arms from the OA center. Vertical arms cover
/// `reach * height / 2`, horizontal arms `reach * width / 2`.
pub fn crosshair_segments(oa: &Rect, reach: f64) -> Crosshair {
    let c = oa.center();
    let reach = reach.clamp(0.0, 1.0);
    let dy = reach * oa.height() / 2.0;
    let dx = reach * oa.width() / 2.0;
    let arm = |end: Point| Segment { start: c, end };
    Crosshair {
        up: arm(Point::new(c.x, c.y - dy)),
        down: arm(Point::new(c.x, c.y + dy)),
        left: arm(Point::new(c.x - dx, c.y)),
        right: arm(Point::new(c.x + dx, c.y)),
    }
}

/// Places `src` (bitmap-normalized) with its on-screen size at `origin`, then
/// clips to the OA. The crop shrinks with the clip so scale is preserved.
fn project(src: Rect, origin: Point, chart_rect: &Rect, oa: &Rect) -> Projection {
    let sx = chart_rect.width();
    let sy = chart_rect.height();
    let desired = Rect::from_origin_size(origin.x, origin.y, src.width() * sx, src.height() * sy);
    let dst = desired.intersection(oa).unwrap_or(Rect::new(
        desired.x0.clamp(oa.x0, oa.x1),
        desired.y0.clamp(oa.y0, oa.y1),
        desired.x0.clamp(oa.x0, oa.x1),
        desired.y0.clamp(oa.y0, oa.y1),
    ));
    let trim = |d: f64, s: f64| if s > 0.0 { d / s } else { 0.0 };
    let src = Rect::new(
        src.x0 + trim(dst.x0 - desired.x0, sx),
        src.y0 + trim(dst.y0 - desired.y0, sy),
        src.x0 + trim(dst.x1 - desired.x0, sx),
        src.y0 + trim(dst.y1 - desired.y0, sy),
    );
    Projection { src, dst }
}

/// Resolves one Dynamic Context frame.
///
/// Returns `None` (overlay hidden) when the pointer is outside `chart_rect` or
/// the context has been toggled off.
///
/// The pointer's position inside the plot area is mapped linearly onto each
/// axis band; [`project_axis_window`] picks the visible part. The x-axis strip
/// sits on the OA bottom edge and the y-axis strip on its left edge, each
/// centered along its direction. A strip spanning the whole axis, or one
/// longer than the OA, is anchored at the OA bottom-left corner instead and
/// clipped at its far end. Axis titles go whole to the bottom-right
/// (x) and top-left (y) corners; the legend goes to the top-right corner.
pub fn layout_dynamic_context(
    pointer: Point,
    settings: &OverlaySettings,
    annotation: &ChartAnnotation,
    chart_rect: &Rect,
) -> Option<OverlayLayout> {
    if !settings.context_enabled || !chart_rect.contains(pointer) {
        return None;
    }
    let oa = place_oa(pointer, settings.oa_width, settings.oa_height);
    let on_chart = chart_rect.normalize(pointer);
    let plot = annotation.plot_area;
    let fraction = |v: f64, lo: f64, len: f64| {
        if len > 0.0 {
            ((v - lo) / len).clamp(0.0, 1.0)
        } else {
            0.5
        }
    };
    let x_window = project_axis_window(
        fraction(on_chart.x, plot.x0, plot.width()),
        settings.axis_ratio,
    );
    let y_window = project_axis_window(
        fraction(on_chart.y, plot.y0, plot.height()),
        settings.axis_ratio,
    );

    let xa = annotation.x_axis;
    let x_src = Rect::new(
        xa.x0 + x_window.lo * xa.width(),
        xa.y0,
        xa.x0 + x_window.hi() * xa.width(),
        xa.y1,
    );
    let x_len = x_src.width() * chart_rect.width();
    let x_left = if x_window.is_full() || x_len >= oa.width() {
        oa.x0
    } else {
        oa.center().x - x_len / 2.0
    };
    let x_axis = project(
        x_src,
        Point::new(x_left, oa.y1 - x_src.height() * chart_rect.height()),
        chart_rect,
        &oa,
    );

    let ya = annotation.y_axis;
    let y_src = Rect::new(
        ya.x0,
        ya.y0 + y_window.lo * ya.height(),
        ya.x1,
        ya.y0 + y_window.hi() * ya.height(),
    );
    let y_len = y_src.height() * chart_rect.height();
    let y_top = if y_window.is_full() || y_len >= oa.height() {
        oa.y1 - y_len
    } else {
        oa.center().y - y_len / 2.0
    };
    let y_axis = project(y_src, Point::new(oa.x0, y_top), chart_rect, &oa);

    let x_title = annotation.x_axis_title.map(|t| {
        let size = (
            t.width() * chart_rect.width(),
            t.height() * chart_rect.height(),
        );
        project(
            t,
            Point::new(oa.x1 - size.0, oa.y1 - size.1),
            chart_rect,
            &oa,
        )
    });
    let y_title = annotation
        .y_axis_title
        .map(|t| project(t, oa.top_left(), chart_rect, &oa));
    let legend = annotation.legend.map(|l| {
        let w = l.width() * chart_rect.width();
        project(l, Point::new(oa.x1 - w, oa.y0), chart_rect, &oa)
    });

    Some(OverlayLayout {
        oa,
        x_window,
        y_window,
        x_axis,
        y_axis,
        x_title,
        y_title,
        legend,
        crosshair: crosshair_segments(&oa, settings.crosshair_reach),
        dim_region: if settings.outer_dimming {
            dim_region(&oa)
        } else {
            Vec::new()
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annotation::tests::sample;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn crosshair_full_reach_touches_edges() {
        let c = crosshair_segments(&Rect::UNIT, 1.0);
        let ends: [Point; 4] = c.segments().map(|s| s.end);
        assert_eq!(
            ends,
            [
                Point::new(0.5, 0.0),
                Point::new(0.5, 1.0),
                Point::new(0.0, 0.5),
                Point::new(1.0, 0.5)
            ]
        );
    }

    #[test]
    fn crosshair_half_reach_stops_halfway() {
        let ends = crosshair_segments(&Rect::UNIT, 0.5)
            .segments()
            .map(|s| s.end);
        assert_eq!(
            ends,
            [
                Point::new(0.5, 0.25),
                Point::new(0.5, 0.75),
                Point::new(0.25, 0.5),
                Point::new(0.75, 0.5)
            ]
        );
    }

    #[test]
    fn crosshair_zero_reach_collapses() {
        let oa = Rect::new(0.1, 0.2, 0.5, 0.4);
        for s in crosshair_segments(&oa, 0.0).segments() {
            assert_eq!(s.length(), 0.0);
            assert_eq!(s.start, oa.center());
        }
    }

    #[test]
    fn oa_slides_inside_viewport() {
        let oa = place_oa(Point::new(0.02, 0.99), 0.4, 0.3);
        assert_eq!(oa.x0, 0.0);
        assert!(close(oa.y1, 1.0));
        assert!(close(oa.width(), 0.4));
    }

    #[test]
    fn dim_region_tiles_viewport_minus_oa() {
        let oa = Rect::new(0.2, 0.3, 0.6, 0.7);
        let bands = dim_region(&oa);
        assert_eq!(bands.len(), 4);
        let area: f64 = bands.iter().map(|r| r.width() * r.height()).sum();
        assert!(close(area, 1.0 - 0.4 * 0.4));
        assert_eq!(dim_region(&Rect::UNIT).len(), 0);
    }

    #[test]
    fn hidden_outside_chart_or_when_toggled_off() {
        let a = sample();
        let chart = Rect::new(0.1, 0.1, 0.9, 0.9);
        let s = OverlaySettings::default();
        assert!(layout_dynamic_context(Point::new(0.05, 0.5), &s, &a, &chart).is_none());
        let off = OverlaySettings {
            context_enabled: false,
            ..s
        };
        assert!(layout_dynamic_context(Point::new(0.5, 0.5), &off, &a, &chart).is_none());
    }

    #[test]
    fn missing_legend_only_drops_the_legend() {
        let mut a = sample();
        let chart = Rect::new(0.0, 0.0, 1.0, 1.0);
        let s = OverlaySettings::default();
        let p = Point::new(0.4, 0.45);
        let with = layout_dynamic_context(p, &s, &a, &chart).unwrap();
        a.legend = None;
        let without = layout_dynamic_context(p, &s, &a, &chart).unwrap();
        assert!(with.legend.is_some());
        assert!(without.legend.is_none());
        assert_eq!(
            OverlayLayout {
                legend: None,
                ..with
            },
            without
        );
    }

    #[test]
    fn legend_sits_top_right() {
        let a = sample();
        let chart = Rect::new(0.0, 0.0, 1.0, 1.0);
        let l = layout_dynamic_context(
            Point::new(0.5, 0.5),
            &OverlaySettings::default(),
            &a,
            &chart,
        )
        .unwrap()
        .legend
        .unwrap();
        assert_eq!(l.dst.x1, 0.7);
        assert_eq!(l.dst.y0, 0.3);
        assert_eq!(l.src, a.legend.unwrap());
    }

    #[test]
    fn oversized_legend_is_clipped_keeping_its_top_right() {
        let mut a = sample();
        a.legend = Some(Rect::new(0.1, 0.1, 0.9, 0.9));
        let chart = Rect::new(0.0, 0.0, 1.0, 1.0);
        let s = OverlaySettings::default();
        let l = layout_dynamic_context(Point::new(0.5, 0.5), &s, &a, &chart)
            .unwrap()
            .legend
            .unwrap();
        let oa = place_oa(Point::new(0.5, 0.5), s.oa_width, s.oa_height);
        assert_eq!(l.dst, oa);
        assert!(close(l.src.x1, 0.9) && close(l.src.y0, 0.1));
        assert!(close(l.src.width(), 0.4) && close(l.src.height(), 0.4));
    }
}
