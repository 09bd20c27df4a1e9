//! Normalized 2D primitives shared by every module.

use core::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        libm::hypot(self.x - other.x, self.y - other.y)
    }
}

/// Axis-aligned rectangle `[x0, y0, x1, y1]`.
///
/// Construction does not enforce ordering; annotation files are validated
/// separately so violations can be reported with a field path.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    pub const UNIT: Rect = Rect::new(0.0, 0.0, 1.0, 1.0);

    pub const fn new(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        Self { x0, y0, x1, y1 }
    }

    pub fn from_origin_size(x0: f64, y0: f64, width: f64, height: f64) -> Self {
        Self::new(x0, y0, x0 + width, y0 + height)
    }

    pub fn width(&self) -> f64 {
        self.x1 - self.x0
    }

    pub fn height(&self) -> f64 {
        self.y1 - self.y0
    }

    pub fn center(&self) -> Point {
        Point::new((self.x0 + self.x1) / 2.0, (self.y0 + self.y1) / 2.0)
    }

    pub fn top_left(&self) -> Point {
        Point::new(self.x0, self.y0)
    }

    pub fn bottom_left(&self) -> Point {
        Point::new(self.x0, self.y1)
    }

    pub fn is_ordered(&self) -> bool {
        self.x0 <= self.x1 && self.y0 <= self.y1
    }

    pub fn is_finite(&self) -> bool {
        self.x0.is_finite() && self.y0.is_finite() && self.x1.is_finite() && self.y1.is_finite()
    }

    /// Closed containment.
    pub fn contains(&self, p: Point) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        other.x0 >= self.x0 && other.x1 <= self.x1 && other.y0 >= self.y0 && other.y1 <= self.y1
    }

    pub fn intersection(&self, other: &Rect) -> Option<Rect> {
        let r = Rect::new(
            self.x0.max(other.x0),
            self.y0.max(other.y0),
            self.x1.min(other.x1),
            self.y1.min(other.y1),
        );
        r.is_ordered().then_some(r)
    }

    /// Maps a point in unit coordinates of this rect into its own space.
    pub fn denormalize(&self, u: Point) -> Point {
        Point::new(self.x0 + u.x * self.width(), self.y0 + u.y * self.height())
    }

    /// Inverse of [`Rect::denormalize`]. Degenerate extents map to 0.
    pub fn normalize(&self, p: Point) -> Point {
        let fx = if self.width() > 0.0 {
            (p.x - self.x0) / self.width()
        } else {
            0.0
        };
        let fy = if self.height() > 0.0 {
            (p.y - self.y0) / self.height()
        } else {
            0.0
        };
        Point::new(fx, fy)
    }

    /// Maps a rect given in this rect's unit coordinates into its space.
    pub fn denormalize_rect(&self, r: &Rect) -> Rect {
        let a = self.denormalize(Point::new(r.x0, r.y0));
        let b = self.denormalize(Point::new(r.x1, r.y1));
        Rect::new(a.x, a.y, b.x, b.y)
    }

    pub fn normalize_rect(&self, r: &Rect) -> Rect {
        let a = self.normalize(Point::new(r.x0, r.y0));
        let b = self.normalize(Point::new(r.x1, r.y1));
        Rect::new(a.x, a.y, b.x, b.y)
    }
}

impl fmt::Display for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.x0, self.y0, self.x1, self.y1)
    }
}

// Rects travel as `[x0, y0, x1, y1]` arrays in every document.
impl Serialize for Rect {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        [self.x0, self.y0, self.x1, self.y1].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Rect {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [x0, y0, x1, y1] = <[f64; 4]>::deserialize(deserializer)?;
        Ok(Rect::new(x0, y0, x1, y1))
    }
}

/// Line segment from `start` to `end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Segment {
    pub start: Point,
    pub end: Point,
}

impl Segment {
    pub fn length(&self) -> f64 {
        self.start.distance(self.end)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_round_trips() {
        let r = Rect::new(0.2, 0.1, 0.8, 0.5);
        let p = Point::new(0.35, 0.4);
        let q = r.denormalize(r.normalize(p));
        assert!((p.x - q.x).abs() < 1e-15 && (p.y - q.y).abs() < 1e-15);
    }

    #[test]
    fn disjoint_rects_have_no_intersection() {
        let a = Rect::new(0.0, 0.0, 0.2, 0.2);
        let b = Rect::new(0.5, 0.5, 0.6, 0.6);
        assert_eq!(a.intersection(&b), None);
        assert_eq!(a.intersection(&Rect::UNIT), Some(a));
    }
}
