use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::geom::Point;
use crate::trace::{PointerSample, PointerTrace};

/// Steps every trajectory is resampled to before comparison.
pub const DEFAULT_STEPS: usize = 500;

/// A trajectory sampled at evenly spaced instants.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResampledPath {
    /// Id of the trace this path came from, if any.
    pub source: Option<String>,
    pub points: Vec<Point>,
}

impl ResampledPath {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Resamples a trace at `steps` instants evenly spaced from its first to its
/// last sample.
pub fn resample(trace: &PointerTrace, steps: usize) -> Result<ResampledPath, AnalysisError> {
    let mut path = resample_samples(trace.samples(), steps)?;
    path.source = Some(alloc::format!("{}", trace.id));
    Ok(path)
}

/// Position at each instant is linearly interpolated in time between the two
/// bracketing samples, so an idle pointer holds its position. The first and
/// last points are the first and last samples exactly.
pub fn resample_samples(
    samples: &[PointerSample],
    steps: usize,
) -> Result<ResampledPath, AnalysisError> {
    if samples.len() < 2 {
        return Err(AnalysisError::TooFewSamples(samples.len()));
    }
    if steps < 2 {
        return Err(AnalysisError::TooFewSteps(steps));
    }
    let t0 = samples[0].t;
    let span = (samples[samples.len() - 1].t - t0) as f64;
    // Sample times as fractions of the span, so the result does not depend
    // on the time origin or unit.
    let at = |i: usize| (samples[i].t - t0) as f64 / span;
    let pos = |i: usize| Point::new(samples[i].x, samples[i].y);

    let last = steps - 1;
    let mut points = Vec::with_capacity(steps);
    let mut seg = 0usize;
    for k in 0..steps {
        if k == last {
            points.push(pos(samples.len() - 1));
            break;
        }
        let f = k as f64 / last as f64;
        while seg + 2 < samples.len() && at(seg + 1) <= f {
            seg += 1;
        }
        let (fa, fb) = (at(seg), at(seg + 1));
        let w = if fb > fa {
            ((f - fa) / (fb - fa)).clamp(0.0, 1.0)
        } else {
            0.0
        };
        let (a, b) = (pos(seg), pos(seg + 1));
        points.push(Point::new(a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)));
    }
    Ok(ResampledPath {
        source: None,
        points,
    })
}

/// Pointwise mean of equally long paths.
pub fn mean_path(paths: &[ResampledPath]) -> Result<ResampledPath, AnalysisError> {
    let first = paths.first().ok_or(AnalysisError::NoPaths)?;
    let len = first.len();
    if let Some((index, p)) = paths.iter().enumerate().find(|(_, p)| p.len() != len) {
        return Err(AnalysisError::LengthMismatch {
            index,
            len: p.len(),
            expected: len,
        });
    }
    let n = paths.len() as f64;
    let points = (0..len)
        .map(|k| {
            let (sx, sy) = paths.iter().fold((0.0, 0.0), |(sx, sy), p| {
                (sx + p.points[k].x, sy + p.points[k].y)
            });
            Point::new(sx / n, sy / n)
        })
        .collect();
    Ok(ResampledPath {
        source: Some("mean".into()),
        points,
    })
}
