//! IO, file formats and pipelines for the `windrank` tool.
//!
//! The numeric work lives in `windrank-core`; this crate supplies the
//! site-table CSV format, the NASA POWER climatology client with its
//! on-disk cache, the versioned JSON output schemas with run manifests,
//! the end-to-end rank/train/evaluate pipelines, and the command-line
//! interface on top of them.

pub mod cli;
pub mod csvio;
pub mod error;
pub mod formats;
pub mod manifest;
pub mod nasa;
pub mod pipeline;
pub mod sampledata;

pub use error::WindrankError;
