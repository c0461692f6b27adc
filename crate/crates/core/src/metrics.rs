//! Forecast error statistics on original-unit predictions.

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::math;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("predicted has {predicted} values, actual has {actual}")]
    LengthMismatch { predicted: usize, actual: usize },
    #[error("empty input series")]
    EmptyInput,
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("n_bins must be at least 1")]
    ZeroBins,
}

/// The error statistics of one prediction series.
///
/// `mape` skips samples whose actual value is zero (`mape_skipped` counts
/// them) and is absent when every sample was skipped. `nmse` normalizes
/// the MSE by the population variance of the actual series and is absent
/// when that variance is zero; `nrmse` normalizes the RMSE by the range
/// of the actual series and is absent when the range is zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    /// Root mean square error (m/s when inputs are m/s).
    pub rmse: f64,
    /// Mean absolute error.
    pub mae: f64,
    /// Mean square error.
    pub mse: f64,
    /// Mean absolute percentage error, in percent.
    pub mape: Option<f64>,
    /// MSE / variance(actual).
    pub nmse: Option<f64>,
    /// RMSE / (max(actual) - min(actual)).
    pub nrmse: Option<f64>,
    /// Sample count.
    pub n: usize,
    /// Samples excluded from MAPE because the actual value was zero.
    pub mape_skipped: usize,
}

/// Compute all error statistics for a prediction series.
pub fn compute_metrics(predicted: &[f64], actual: &[f64]) -> Result<EvaluationReport, MetricsError> {
    if predicted.len() != actual.len() {
        return Err(MetricsError::LengthMismatch {
            predicted: predicted.len(),
            actual: actual.len(),
        });
    }
    if predicted.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    for (i, v) in predicted.iter().chain(actual).enumerate() {
        if !v.is_finite() {
            return Err(MetricsError::NonFinite { index: i % predicted.len() });
        }
    }

    let n = actual.len();
    let mut sq_sum = 0.0;
    let mut abs_sum = 0.0;
    let mut pct_sum = 0.0;
    let mut pct_n = 0usize;
    for (&p, &a) in predicted.iter().zip(actual) {
        let e = p - a;
        sq_sum += e * e;
        abs_sum += math::abs(e);
        if a != 0.0 {
            pct_sum += math::abs(e) / math::abs(a);
            pct_n += 1;
        }
    }
    let mse = sq_sum / n as f64;
    let rmse = math::sqrt(mse);
    let mae = abs_sum / n as f64;
    let mape = (pct_n > 0).then(|| 100.0 * pct_sum / pct_n as f64);

    let variance = math::variance(actual);
    let nmse = (variance > 0.0).then(|| mse / variance);
    let (lo, hi) = actual
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &a| (lo.min(a), hi.max(a)));
    let nrmse = (hi > lo).then(|| rmse / (hi - lo));

    Ok(EvaluationReport {
        rmse,
        mae,
        mse,
        mape,
        nmse,
        nrmse,
        n,
        mape_skipped: n - pct_n,
    })
}

/// Equal-width histogram of prediction errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorHistogram {
    /// `n_bins + 1` strictly increasing bin edges spanning the data.
    pub edges: Vec<f64>,
    /// Count per bin; sums to the sample count. The maximum value is
    /// assigned to the last bin.
    pub counts: Vec<usize>,
}

/// Bin errors into `n_bins` equal-width bins over `[min, max]`. When all
/// errors are equal the histogram degenerates to a single unit-width bin
/// holding every sample.
pub fn error_histogram(errors: &[f64], n_bins: usize) -> Result<ErrorHistogram, MetricsError> {
    if errors.is_empty() {
        return Err(MetricsError::EmptyInput);
    }
    if n_bins == 0 {
        return Err(MetricsError::ZeroBins);
    }
    if let Some(index) = errors.iter().position(|e| !e.is_finite()) {
        return Err(MetricsError::NonFinite { index });
    }
    let (lo, hi) = errors
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &e| (lo.min(e), hi.max(e)));

    if lo == hi {
        return Ok(ErrorHistogram { edges: alloc::vec![lo - 0.5, lo + 0.5], counts: alloc::vec![errors.len()] });
    }

    let width = (hi - lo) / n_bins as f64;
    let edges: Vec<f64> =
        (0..=n_bins).map(|i| if i == n_bins { hi } else { lo + width * i as f64 }).collect();
    let mut counts = alloc::vec![0usize; n_bins];
    for &e in errors {
        let raw = math::floor((e - lo) / width) as usize;
        counts[raw.min(n_bins - 1)] += 1;
    }
    Ok(ErrorHistogram { edges, counts })
}
