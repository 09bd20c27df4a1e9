//! Layout documents: one resolved frame as JSON, for golden tests and for the
//! layout endpoint.
//!
//! Rects are `[x0, y0, x1, y1]`, points `[x, y]`, segments `[[x, y], [x, y]]`
//! and every number is rounded to 6 decimal places.

use chartlens_core::geom::{Point, Rect, Segment};
use chartlens_core::overlay::{AxisWindow, FrameLayout, MinimapLayout, OverlayLayout, Projection};
use serde_json::{json, Value};

/// Decimal places kept in layout documents.
pub const DECIMALS: i32 = 6;

pub fn round6(v: f64) -> f64 {
    let scale = 10f64.powi(DECIMALS);
    let r = (v * scale).round() / scale;
    // Normalizes -0.0 so documents compare byte for byte.
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn rect(r: &Rect) -> Value {
    json!([round6(r.x0), round6(r.y0), round6(r.x1), round6(r.y1)])
}

fn point(p: &Point) -> Value {
    json!([round6(p.x), round6(p.y)])
}

fn segment(s: &Segment) -> Value {
    json!([point(&s.start), point(&s.end)])
}

fn window(w: &AxisWindow) -> Value {
    json!([round6(w.lo), round6(w.hi())])
}

fn projection(p: &Projection) -> Value {
    json!({ "src": rect(&p.src), "dst": rect(&p.dst) })
}

fn optional(p: &Option<Projection>) -> Value {
    p.as_ref().map_or(Value::Null, projection)
}

fn dynamic_context(l: &OverlayLayout) -> Value {
    json!({
        "method": "dynamic-context",
        "oa": rect(&l.oa),
        "x_window": window(&l.x_window),
        "y_window": window(&l.y_window),
        "x_axis": projection(&l.x_axis),
        "y_axis": projection(&l.y_axis),
        "x_title": optional(&l.x_title),
        "y_title": optional(&l.y_title),
        "legend": optional(&l.legend),
        "crosshair": {
            "up": segment(&l.crosshair.up),
            "down": segment(&l.crosshair.down),
            "left": segment(&l.crosshair.left),
            "right": segment(&l.crosshair.right),
        },
        "dim_region": l.dim_region.iter().map(rect).collect::<Vec<_>>(),
    })
}

fn minimap(l: &MinimapLayout) -> Value {
    json!({
        "method": "mini-map",
        "oa": rect(&l.oa),
        "map_dst": rect(&l.map_dst),
        "indicator": {
            "center": point(&l.indicator_center),
            "radius": round6(l.indicator_radius),
            "fill": l.indicator_fill.to_hex(),
            "border": l.indicator_border.to_hex(),
        },
        "dim_region": l.dim_region.iter().map(rect).collect::<Vec<_>>(),
    })
}

/// The frame as a layout document.
pub fn layout_document(frame: &FrameLayout) -> Value {
    match frame {
        FrameLayout::Hidden => json!({ "method": "hidden" }),
        FrameLayout::DynamicContext(l) => dynamic_context(l),
        FrameLayout::MiniMap(l) => minimap(l),
    }
}

/// Pretty-printed layout document with a trailing newline.
pub fn layout_json(frame: &FrameLayout) -> String {
    super::to_json(&layout_document(frame))
}
