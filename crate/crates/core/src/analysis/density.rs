use alloc::vec;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::geom::{Point, Rect};

/// Share of each axis covered by the inner zone, centered.
pub const INNER_ZONE_SPAN: f64 = 0.70;

/// Sample counts over a g×g partition of the unit square.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DensityGrid {
    pub bins: usize,
    /// Row-major, row 0 at the top.
    pub counts: Vec<u64>,
    pub total: u64,
    pub inner_zone: Rect,
    /// Samples that fall inside `inner_zone`.
    pub inner_count: u64,
}

impl DensityGrid {
    pub fn get(&self, col: usize, row: usize) -> u64 {
        self.counts[row * self.bins + col]
    }

    pub fn inner_fraction(&self) -> Option<f64> {
        (self.total > 0).then(|| self.inner_count as f64 / self.total as f64)
    }
}

fn inner_zone() -> Rect {
    let margin = (1.0 - INNER_ZONE_SPAN) / 2.0;
    Rect::new(margin, margin, 1.0 - margin, 1.0 - margin)
}

/// Bins points into `bins × bins` cells. Cells are half-open except the last
/// row and column, which also take coordinate 1. Coordinates are clamped to
/// the unit square first.
pub fn density_grid(
    points: impl IntoIterator<Item = Point>,
    bins: usize,
) -> Result<DensityGrid, AnalysisError> {
    if bins < 2 {
        return Err(AnalysisError::TooFewBins(bins));
    }
    let zone = inner_zone();
    let mut counts = vec![0u64; bins * bins];
    let (mut total, mut inner_count) = (0u64, 0u64);
    let cell = |v: f64| ((v * bins as f64) as usize).min(bins - 1);
    for p in points {
        if !(p.x.is_finite() && p.y.is_finite()) {
            continue;
        }
        let p = Point::new(p.x.clamp(0.0, 1.0), p.y.clamp(0.0, 1.0));
        counts[cell(p.y) * bins + cell(p.x)] += 1;
        total += 1;
        if zone.contains(p) {
            inner_count += 1;
        }
    }
    Ok(DensityGrid {
        bins,
        counts,
        total,
        inner_zone: zone,
        inner_count,
    })
}
