//! Chart bundles, file formats, the HTTP service and the command line for
//! the chartlens toolkit. Layout, scoring and statistics live in
//! `chartlens-core`; this crate adds everything that touches files,
//! sockets or threads.

#![forbid(unsafe_code)]

pub mod analyze;
pub mod bundle;
pub mod cli;
pub mod error;
pub mod formats;
pub mod recorder;
pub mod report;
pub mod server;

pub use chartlens_core as core;
pub use error::{Error, Result};
