use alloc::vec;

use super::resample::ResampledPath;
use crate::geom::Point;

/// Dynamic time warping distance between two resampled paths.
pub fn dtw(a: &ResampledPath, b: &ResampledPath) -> f64 {
    dtw_points(&a.points, &b.points)
}

/// Classic DTW: Euclidean local cost, steps (1,0), (0,1) and (1,1) with unit
/// weights, no window. The cost of an alignment is the sum of local costs of
/// every matched pair, both endpoints included.
///
/// Returns `f64::INFINITY` if exactly one side is empty and 0 if both are.
pub fn dtw_points(a: &[Point], b: &[Point]) -> f64 {
    match (a.is_empty(), b.is_empty()) {
        (true, true) => return 0.0,
        (true, false) | (false, true) => return f64::INFINITY,
        _ => {}
    }
    // Two rolling rows over b.
    let mut prev = vec![f64::INFINITY; b.len()];
    let mut cur = vec![f64::INFINITY; b.len()];
    for (i, pa) in a.iter().enumerate() {
        for (j, pb) in b.iter().enumerate() {
            let best = match (i, j) {
                (0, 0) => 0.0,
                (0, _) => cur[j - 1],
                (_, 0) => prev[j],
                _ => prev[j].min(cur[j - 1]).min(prev[j - 1]),
            };
            cur[j] = pa.distance(*pb) + best;
        }
        core::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len() - 1]
}
