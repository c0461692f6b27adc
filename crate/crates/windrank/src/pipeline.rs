//! End-to-end flows shared by the CLI and the test suites.
//!
//! Ranking always runs on every site in the data file; training fits on
//! Training-role sites only, with normalization parameters fitted on the
//! training split and reused verbatim for test rows, so held-out error
//! measures generalization to unseen sites.

use windrank_core::cascade::init_network;
use windrank_core::dataset::{build_feature_matrix, split_by_role, SiteRecord};
use windrank_core::matrix::FeatureMatrix;
use windrank_core::metrics::{compute_metrics, error_histogram, ErrorHistogram, EvaluationReport};
use windrank_core::relief::{rank_features, rrelieff_weights, FeatureWeights, RankResult, SampleCount};
use windrank_core::scale::{apply_scale, minmax_scale};
use windrank_core::train::{sensitivity_sweep, train_with_monitor, SweepTrial, TrainConfig, TrainReport};

use crate::error::WindrankError;
use crate::formats::{ModelFile, PredictionRow};

fn domain(detail: impl Into<String>) -> WindrankError {
    WindrankError::Domain(detail.into())
}

/// Rank the canonical features against wind speed with the regression
/// Relief estimator over every site in the file.
pub fn rank_sites(
    sites: &[SiteRecord],
    k: usize,
    m: SampleCount,
    seed: u64,
) -> Result<(FeatureWeights, RankResult), WindrankError> {
    let matrix = build_feature_matrix(sites)?;
    let weights = rrelieff_weights(&matrix, matrix.target(), k, m, seed)?;
    let rank = rank_features(&weights);
    Ok((weights, rank))
}

/// Everything produced by one training run.
pub struct TrainOutcome {
    pub weights: FeatureWeights,
    pub rank: RankResult,
    pub selected_columns: Vec<usize>,
    pub selected_names: Vec<String>,
    pub normalization: windrank_core::scale::NormalizationParams,
    pub report: TrainReport,
    /// Errors of the returned network on the full training split, m/s.
    pub train_metrics: EvaluationReport,
}

/// Rank features, select the top `top`, and train the cascade network on
/// the Training-role sites. Testing-role sites, when present, are
/// tracked as a per-epoch monitor series (never used for stopping).
pub fn train_sites(
    sites: &[SiteRecord],
    k: usize,
    m: SampleCount,
    top: usize,
    config: &TrainConfig,
) -> Result<TrainOutcome, WindrankError> {
    let (weights, rank) = rank_sites(sites, k, m, config.seed)?;
    if top == 0 || top > weights.weights.len() {
        return Err(WindrankError::Usage(format!(
            "--top must be between 1 and {}, got {top}",
            weights.weights.len()
        )));
    }
    let selected_columns: Vec<usize> = rank.order[..top].to_vec();

    let (training, testing) = split_by_role(sites);
    if training.is_empty() {
        return Err(domain("data file has no Training-role sites to fit on"));
    }
    let train_full = build_feature_matrix(&training)?;
    let train_sel = train_full.select_columns(&selected_columns)?;
    let (train_scaled, normalization) = minmax_scale(&train_sel)?;

    let monitor_scaled = if testing.is_empty() {
        None
    } else {
        let test_sel = build_feature_matrix(&testing)?.select_columns(&selected_columns)?;
        Some(apply_scale(&test_sel, &normalization))
    };

    let network = init_network(top, config.n_hidden, config.seed)?;
    let report = train_with_monitor(network, &train_scaled, monitor_scaled.as_ref(), config)?;

    let predicted: Vec<f64> = report
        .network
        .predict_batch(&train_scaled)?
        .iter()
        .map(|&y| normalization.inverse_target(y))
        .collect();
    let train_metrics = compute_metrics(&predicted, train_sel.target())?;

    let selected_names =
        selected_columns.iter().map(|&c| train_full.feature_names()[c].clone()).collect();
    Ok(TrainOutcome {
        weights,
        rank,
        selected_columns,
        selected_names,
        normalization,
        report,
        train_metrics,
    })
}

/// Predictions (m/s) of a stored model on the canonical matrix of the
/// given sites.
pub fn predict_matrix(
    sites: &[SiteRecord],
    model: &ModelFile,
) -> Result<(FeatureMatrix, Vec<f64>), WindrankError> {
    let full = build_feature_matrix(sites)?;
    let selected = full.select_columns(&model.selected_columns)?;
    let scaled = apply_scale(&selected, &model.normalization);
    let predictions: Vec<f64> = model
        .network
        .predict_batch(&scaled)?
        .iter()
        .map(|&y| model.normalization.inverse_target(y))
        .collect();
    Ok((selected, predictions))
}

/// Score a stored model on the Testing-role sites.
pub fn evaluate_sites(
    sites: &[SiteRecord],
    model: &ModelFile,
    n_bins: usize,
) -> Result<(EvaluationReport, ErrorHistogram), WindrankError> {
    let (_, testing) = split_by_role(sites);
    if testing.is_empty() {
        return Err(domain("data file has no Testing-role sites to evaluate on"));
    }
    let (matrix, predictions) = predict_matrix(&testing, model)?;
    let metrics = compute_metrics(&predictions, matrix.target())?;
    let errors: Vec<f64> =
        predictions.iter().zip(matrix.target()).map(|(p, a)| p - a).collect();
    let histogram = error_histogram(&errors, n_bins)?;
    Ok((metrics, histogram))
}

/// Apply a stored model to every site row in the file.
pub fn predict_sites(
    sites: &[SiteRecord],
    model: &ModelFile,
) -> Result<Vec<PredictionRow>, WindrankError> {
    let (matrix, predictions) = predict_matrix(sites, model)?;
    Ok(matrix
        .row_origin()
        .iter()
        .zip(&predictions)
        .map(|(origin, &predicted_wind_speed)| PredictionRow {
            site: sites[origin.site].name.clone(),
            state: sites[origin.site].state.clone(),
            month: origin.month,
            predicted_wind_speed,
        })
        .collect())
}

/// Rank, select, and retrain across a hidden-size range, scoring each
/// trial on the Testing-role sites.
pub fn sweep_sites(
    sites: &[SiteRecord],
    base_hidden: usize,
    delta: usize,
    k: usize,
    m: SampleCount,
    top: usize,
    config: &TrainConfig,
) -> Result<Vec<SweepTrial>, WindrankError> {
    let (weights, rank) = rank_sites(sites, k, m, config.seed)?;
    if top == 0 || top > weights.weights.len() {
        return Err(WindrankError::Usage(format!(
            "--top must be between 1 and {}, got {top}",
            weights.weights.len()
        )));
    }
    let selected: Vec<usize> = rank.order[..top].to_vec();
    let (training, testing) = split_by_role(sites);
    if training.is_empty() {
        return Err(domain("data file has no Training-role sites to fit on"));
    }
    if testing.is_empty() {
        return Err(domain("sweep needs Testing-role sites to score trials on"));
    }
    let (train_scaled, normalization) =
        minmax_scale(&build_feature_matrix(&training)?.select_columns(&selected)?)?;
    let holdout =
        apply_scale(&build_feature_matrix(&testing)?.select_columns(&selected)?, &normalization);
    Ok(sensitivity_sweep(base_hidden, delta, &train_scaled, &holdout, &normalization, config)?)
}
