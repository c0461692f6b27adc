//! Feature ranking and regression for wind resource assessment.
//!
//! The crate bundles the numeric machinery behind the `windrank` tool:
//!
//! - [`relief`]: the Relief family of feature-weight estimators
//!   (binary Relief, k-neighbor ReliefF, and the regression variant
//!   RReliefF) plus descending-weight ranking.
//! - [`cascade`] / [`train`]: a one-hidden-layer cascade-forward
//!   regressor (tanh hidden units plus direct input-to-output links)
//!   trained with full-batch Levenberg-Marquardt and validation-based
//!   early stopping.
//! - [`dataset`], [`matrix`], [`scale`]: site records, the fixed-order
//!   feature matrix, and min-max normalization.
//! - [`metrics`]: forecast error statistics and error histograms.
//! - [`windmodels`]: the kinetic wind power law and two simple
//!   forecasting baselines (persistence and a two-lag linear model).
//!
//! Everything is `no_std`-compatible (alloc required). All float math is
//! routed through [`math`] so results are bit-identical across platforms,
//! and every stochastic choice flows from an explicit `u64` seed.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod cascade;
pub mod dataset;
pub mod math;
pub mod matrix;
pub mod metrics;
#[cfg(any(test, feature = "oracles"))]
pub mod oracle;
pub mod relief;
pub mod rng;
pub mod scale;
pub mod train;
pub mod windmodels;

mod linalg;

pub use dataset::{MonthlyObservation, Role, SiteRecord, FEATURE_NAMES};
pub use matrix::FeatureMatrix;
pub use relief::{FeatureWeights, RankResult, SampleCount};
pub use scale::NormalizationParams;
