//! Trajectory statistics and questionnaire aggregation.
//!
//! Pointer traces are resampled to a fixed number of steps, compared pairwise
//! with dynamic time warping, and the resulting distance matrix is tested for
//! condition effects with PERMANOVA, followed by Holm-corrected pairwise
//! tests.

mod density;
mod distance;
mod dtw;
mod permanova;
mod questionnaire;
mod resample;

use thiserror::Error;

pub use density::{density_grid, DensityGrid, INNER_ZONE_SPAN};
pub use distance::DistanceMatrix;
pub use dtw::{dtw, dtw_points};
pub use permanova::{
    holm_adjust, pairwise_permanova_holm, permanova, PairwiseResult, PermanovaResult,
};
pub use questionnaire::{descriptives, sus_score};
pub use resample::{mean_path, resample, resample_samples, ResampledPath, DEFAULT_STEPS};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("trajectory needs at least 2 samples, has {0}")]
    TooFewSamples(usize),
    #[error("resampling needs at least 2 steps, got {0}")]
    TooFewSteps(usize),
    #[error("no paths to average")]
    NoPaths,
    #[error("path {index} has {len} points, expected {expected}")]
    LengthMismatch {
        index: usize,
        len: usize,
        expected: usize,
    },
    #[error("{labels} labels for a {n}x{n} distance matrix")]
    LabelCount { labels: usize, n: usize },
    #[error("need at least 2 groups, found {0}")]
    TooFewGroups(usize),
    #[error("{n} observations leave no within-group degrees of freedom for {groups} groups")]
    NoWithinGroupFreedom { n: usize, groups: usize },
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(&'static str),
    #[error("density grid needs at least 2 bins, got {0}")]
    TooFewBins(usize),
    #[error("SUS needs exactly 10 responses, got {0}")]
    SusArity(usize),
    #[error("SUS response {index} is {value}; responses are 1..=5")]
    SusRange { index: usize, value: u8 },
    #[error("standard deviation needs at least 2 values, got {0}")]
    TooFewValues(usize),
}
