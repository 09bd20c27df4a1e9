/// A window `[lo, lo + width]` along an axis, in fractions of the axis length.
///
/// The width is stored rather than the upper bound so that it equals the
/// requested axis ratio bit for bit.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct AxisWindow {
    pub lo: f64,
    pub width: f64,
}

impl AxisWindow {
    /// Upper bound, never past the end of the axis.
    pub fn hi(&self) -> f64 {
        (self.lo + self.width).min(1.0)
    }

    pub fn is_full(&self) -> bool {
        self.width >= 1.0
    }
}

/// Window of `axis_ratio` of the axis centered on `pointer_u`.
///
/// Near an axis end the window keeps its full width and slides so it stays
/// inside `[0, 1]`. `axis_ratio` must lie in `(0, 1]`; `pointer_u` is clamped.
pub fn project_axis_window(pointer_u: f64, axis_ratio: f64) -> AxisWindow {
    debug_assert!(
        axis_ratio > 0.0 && axis_ratio <= 1.0,
        "axis ratio {axis_ratio}"
    );
    let width = axis_ratio.clamp(f64::MIN_POSITIVE, 1.0);
    let u = if pointer_u.is_nan() {
        0.5
    } else {
        pointer_u.clamp(0.0, 1.0)
    };
    let lo = (u - width / 2.0).clamp(0.0, 1.0 - width);
    AxisWindow { lo, width }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centered_window_has_equal_sides() {
        let w = project_axis_window(0.5, 0.3);
        assert!((w.lo - 0.35).abs() < 1e-15);
        assert!((w.hi() - 0.65).abs() < 1e-15);
        assert_eq!(w.width, 0.3);
    }

    #[test]
    fn full_ratio_covers_the_axis() {
        let w = project_axis_window(0.7, 1.0);
        assert_eq!((w.lo, w.hi()), (0.0, 1.0));
        assert!(w.is_full());
    }

    #[test]
    fn window_slides_at_axis_start() {
        let w = project_axis_window(0.05, 0.3);
        assert_eq!(w.lo, 0.0);
        assert_eq!(w.hi(), 0.3);
    }

    #[test]
    fn window_slides_at_axis_end() {
        let w = project_axis_window(0.99, 0.3);
        assert_eq!(w.hi(), 1.0);
        assert!((w.lo - 0.7).abs() < 1e-15);
    }
}
