//! Mini-map: a scaled copy of the chart inside the OA with a circular
//! indicator at the pointer's position.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::color::Rgba;
use super::dynamic::{dim_region, place_oa};
use super::settings::{Corner, MinimapSettings};
use crate::annotation::ChartAnnotation;
use crate::geom::{Point, Rect};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimapLayout {
    pub oa: Rect,
    pub map_dst: Rect,
    pub indicator_center: Point,
    /// Radius in viewport-width units.
    pub indicator_radius: f64,
    pub indicator_fill: Rgba,
    /// The indicator always carries a white border and a drop shadow.
    pub indicator_border: Rgba,
    pub dim_region: Vec<Rect>,
}

/// Resolves one Mini-map frame; `None` when the pointer is outside the chart
/// or the mini-map has been toggled off.
///
/// The map is `map_scale` of the OA width wide with the displayed chart's
/// aspect ratio, flush with the configured OA corner. A map that would be
/// taller than the OA is shrunk to the OA height, aspect kept.
pub fn layout_minimap(
    pointer: Point,
    settings: &MinimapSettings,
    _annotation: &ChartAnnotation,
    chart_rect: &Rect,
) -> Option<MinimapLayout> {
    if !settings.enabled || !chart_rect.contains(pointer) {
        return None;
    }
    let oa = place_oa(pointer, settings.oa_width, settings.oa_height);
    let aspect = if chart_rect.width() > 0.0 {
        chart_rect.height() / chart_rect.width()
    } else {
        1.0
    };
    let mut w = settings.map_scale * oa.width();
    let mut h = w * aspect;
    if h > oa.height() {
        w *= oa.height() / h;
        h = oa.height();
    }
    let (x0, y0) = match settings.corner {
        Corner::TopLeft => (oa.x0, oa.y0),
        Corner::TopRight => (oa.x1 - w, oa.y0),
        Corner::BottomLeft => (oa.x0, oa.y1 - h),
        Corner::BottomRight => (oa.x1 - w, oa.y1 - h),
    };
    let map_dst = Rect::from_origin_size(x0, y0, w, h);
    let mapped = map_dst.denormalize(chart_rect.normalize(pointer));
    // Rounding may land an ulp outside the map at its far edges.
    let indicator_center = Point::new(
        mapped.x.clamp(map_dst.x0, map_dst.x1),
        mapped.y.clamp(map_dst.y0, map_dst.y1),
    );
    Some(MinimapLayout {
        oa,
        map_dst,
        indicator_center,
        indicator_radius: settings.indicator_radius * map_dst.width(),
        indicator_fill: settings.indicator_fill,
        indicator_border: Rgba::WHITE,
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

    const CHART: Rect = Rect::new(0.125, 0.25, 0.875, 0.75);

    #[test]
    fn center_maps_to_center() {
        let l = layout_minimap(
            CHART.center(),
            &MinimapSettings::default(),
            &sample(),
            &CHART,
        )
        .unwrap();
        assert_eq!(l.indicator_center, l.map_dst.center());
    }

    #[test]
    fn top_left_maps_to_top_left() {
        let l = layout_minimap(
            CHART.top_left(),
            &MinimapSettings::default(),
            &sample(),
            &CHART,
        )
        .unwrap();
        assert_eq!(l.indicator_center, l.map_dst.top_left());
    }

    #[test]
    fn width_is_map_scale_of_oa() {
        let l = layout_minimap(
            Point::new(0.5, 0.5),
            &MinimapSettings::default(),
            &sample(),
            &CHART,
        )
        .unwrap();
        assert!((l.map_dst.width() - 0.3 * l.oa.width()).abs() < 1e-15);
        // Displayed chart is twice as wide as tall.
        assert!((l.map_dst.height() - l.map_dst.width() * 2.0 / 3.0).abs() < 1e-15);
        assert!((l.indicator_radius - 0.15 * l.map_dst.width()).abs() < 1e-15);
    }

    #[test]
    fn default_corner_is_top_right() {
        let l = layout_minimap(
            Point::new(0.5, 0.5),
            &MinimapSettings::default(),
            &sample(),
            &CHART,
        )
        .unwrap();
        assert_eq!(l.map_dst.y0, l.oa.y0);
        assert!((l.map_dst.x1 - l.oa.x1).abs() < 1e-15);
    }

    #[test]
    fn bottom_left_corner_is_flush() {
        let s = MinimapSettings {
            corner: Corner::BottomLeft,
            ..MinimapSettings::default()
        };
        let l = layout_minimap(Point::new(0.5, 0.5), &s, &sample(), &CHART).unwrap();
        assert_eq!(l.map_dst.x0, l.oa.x0);
        assert!((l.map_dst.y1 - l.oa.y1).abs() < 1e-15);
    }

    #[test]
    fn tall_chart_is_shrunk_to_fit() {
        let tall = Rect::new(0.4, 0.0, 0.5, 1.0);
        let s = MinimapSettings {
            map_scale: 1.0,
            ..MinimapSettings::default()
        };
        let l = layout_minimap(Point::new(0.45, 0.5), &s, &sample(), &tall).unwrap();
        assert!((l.map_dst.height() - l.oa.height()).abs() < 1e-15);
        assert!((l.map_dst.width() - l.oa.height() / 10.0).abs() < 1e-15);
    }

    #[test]
    fn hidden_outside_chart_or_when_disabled() {
        let s = MinimapSettings::default();
        assert!(layout_minimap(Point::new(0.05, 0.5), &s, &sample(), &CHART).is_none());
        let off = MinimapSettings {
            enabled: false,
            ..s
        };
        assert!(layout_minimap(Point::new(0.5, 0.5), &off, &sample(), &CHART).is_none());
    }
}
