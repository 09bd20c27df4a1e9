//! Pointer-anchored chart context for low-vision chart reading.
//!
//! This crate is the pure, allocation-only part of chartlens:
//!
//! * [`annotation`]: chart bounding-box annotations and their validation.
//! * [`overlay`]: the Dynamic Context and Mini-map layout engine. Given a
//!   pointer, settings and an annotation it resolves the full geometry of one
//!   frame. It never renders.
//! * [`quiz`]: Mini-VLAT style sessions, scoring, counterbalanced orders and
//!   the data transforms used to build question variants.
//! * [`trace`]: pointer samples and interaction events.
//! * [`analysis`]: trajectory resampling, DTW, PERMANOVA with Holm post-hocs,
//!   density grids, mean paths and questionnaire aggregation.
//!
//! All coordinates are normalized to `[0, 1]` with the origin at the top-left,
//! `x` growing rightwards and `y` downwards.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod analysis;
pub mod annotation;
pub mod condition;
pub mod geom;
pub mod overlay;
pub mod quiz;
pub mod trace;

pub use annotation::{validate_annotation, ChartAnnotation, ChartType, Violation};
pub use condition::Condition;
pub use geom::{Point, Rect, Segment};
