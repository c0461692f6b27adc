//! Versioned JSON schemas for every file the tool emits.
//!
//! All files carry `schema_version` and the [`RunManifest`] that
//! produced them. Serialization is pretty-printed `serde_json` over
//! plain structs (fixed field order, shortest-round-trip floats), so
//! identical runs emit identical bytes and model files reload to
//! bit-identical predictions.

use std::path::Path;

use serde::{de::DeserializeOwned, Deserialize, Serialize};
use windrank_core::cascade::CascadeNetwork;
use windrank_core::metrics::{ErrorHistogram, EvaluationReport};
use windrank_core::relief::{FeatureWeights, RankResult, SampleCount};
use windrank_core::scale::NormalizationParams;
use windrank_core::train::{StopReason, SweepTrial, TrainConfig};
use windrank_core::windmodels::LagModel;

use crate::error::WindrankError;
use crate::manifest::{RunManifest, SCHEMA_VERSION};

/// Output of `rank`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RanksFile {
    pub schema_version: u32,
    /// Canonical feature column names, index-aligned with `weights`.
    pub feature_names: Vec<String>,
    pub weights: Vec<f64>,
    /// 1-based rank per feature (rank 1 = most relevant).
    pub ranks: Vec<usize>,
    /// Feature indices in descending-weight order.
    pub order: Vec<usize>,
    pub k: usize,
    pub m: SampleCount,
    pub seed: u64,
    pub warnings: Vec<String>,
    pub manifest: RunManifest,
}

impl RanksFile {
    pub fn new(
        feature_names: Vec<String>,
        weights: &FeatureWeights,
        rank: &RankResult,
        manifest: RunManifest,
    ) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            feature_names,
            weights: weights.weights.clone(),
            ranks: rank.ranks.clone(),
            order: rank.order.clone(),
            k: weights.k,
            m: weights.m,
            seed: weights.seed,
            warnings: weights.warnings.clone(),
            manifest,
        }
    }
}

/// Output of `train`: everything needed to reproduce predictions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub schema_version: u32,
    /// Names of the selected input features, most relevant first.
    pub feature_names: Vec<String>,
    /// Indices of those features in the canonical 8-column order.
    pub selected_columns: Vec<usize>,
    /// Full ranking the selection came from.
    pub ranking: RankingSummary,
    pub network: CascadeNetwork,
    /// Min-max parameters of the selected columns and the target,
    /// fitted on the training split.
    pub normalization: NormalizationParams,
    pub train_config: TrainConfig,
    pub best_epoch: usize,
    pub stop: StopReason,
    pub manifest: RunManifest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingSummary {
    pub weights: Vec<f64>,
    pub ranks: Vec<usize>,
    pub order: Vec<usize>,
}

/// Output of `train` (second artifact): the loss curves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainReportFile {
    pub schema_version: u32,
    /// Per-epoch MSE in scaled space; index 0 is the initial network.
    pub train_mse: Vec<f64>,
    pub val_mse: Vec<f64>,
    /// Test-set series, recorded for reporting only.
    pub monitor_mse: Option<Vec<f64>>,
    pub best_epoch: usize,
    pub stop: StopReason,
    /// Errors of the final network on the full training split, in m/s.
    pub train_metrics: EvaluationReport,
    pub manifest: RunManifest,
}

/// Output of `evaluate`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationFile {
    pub schema_version: u32,
    pub metrics: EvaluationReport,
    pub histogram: ErrorHistogram,
    pub manifest: RunManifest,
}

/// Output of `predict`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionsFile {
    pub schema_version: u32,
    pub predictions: Vec<PredictionRow>,
    pub manifest: RunManifest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictionRow {
    pub site: String,
    pub state: String,
    pub month: u8,
    /// m/s.
    pub predicted_wind_speed: f64,
}

/// Output of `sweep`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepFile {
    pub schema_version: u32,
    pub base_hidden: usize,
    pub delta: usize,
    pub trials: Vec<SweepTrial>,
    pub selected_n_hidden: Option<usize>,
    pub manifest: RunManifest,
}

/// Output of `power`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerFile {
    pub schema_version: u32,
    /// kg/m³.
    pub rho: f64,
    /// m².
    pub area: f64,
    pub rows: Vec<PowerRow>,
    pub mean_power_w: f64,
    /// Present when `--horizon` was given: lag-model and persistence
    /// forecasts of the speed series, converted to power.
    pub forecast: Option<PowerForecast>,
    pub manifest: RunManifest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerRow {
    /// m/s.
    pub speed: f64,
    /// W.
    pub power_w: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerForecast {
    pub horizon: usize,
    pub lag_model: LagModel,
    pub lag: Vec<PowerRow>,
    pub persistence: Vec<PowerRow>,
}

/// Serialize a value into pretty JSON with a trailing newline.
pub fn to_json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut bytes = serde_json::to_vec_pretty(value).expect("output schemas serialize");
    bytes.push(b'\n');
    bytes
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), WindrankError> {
    std::fs::write(path, to_json_bytes(value)).map_err(|e| WindrankError::io(path, e))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, WindrankError> {
    let bytes = std::fs::read(path).map_err(|e| WindrankError::io(path, e))?;
    serde_json::from_slice(&bytes).map_err(|e| WindrankError::BadFile {
        path: path.to_path_buf(),
        detail: e.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use windrank_core::cascade::init_network;
    use windrank_core::matrix::FeatureMatrix;

    #[test]
    fn model_file_round_trips_to_identical_predictions() {
        let network = init_network(3, 10, 99).unwrap();
        let raw = FeatureMatrix::from_rows(
            &[vec![0.0, 10.0, 5.0], vec![2.0, 30.0, 9.0]],
            vec![1.0, 6.0],
        )
        .unwrap();
        let normalization = NormalizationParams::fit(&raw).unwrap();
        let model = ModelFile {
            schema_version: SCHEMA_VERSION,
            feature_names: vec!["a".into(), "b".into(), "c".into()],
            selected_columns: vec![5, 0, 2],
            ranking: RankingSummary { weights: vec![0.5; 8], ranks: (1..=8).collect(), order: (0..8).collect() },
            network: network.clone(),
            normalization,
            train_config: TrainConfig::default(),
            best_epoch: 4,
            stop: StopReason::Patience,
            manifest: RunManifest::new("train", vec![], 7),
        };

        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        write_json(&path, &model).unwrap();
        let reloaded: ModelFile = read_json(&path).unwrap();
        assert_eq!(reloaded, model);

        let mut rng = windrank_core::rng::seeded(5);
        for _ in 0..50 {
            let x: Vec<f64> =
                (0..3).map(|_| windrank_core::rng::uniform(&mut rng, -1.0, 2.0)).collect();
            let a = model.network.forward(&x).unwrap();
            let b = reloaded.network.forward(&x).unwrap();
            assert_eq!(a.to_bits(), b.to_bits(), "prediction changed across round trip");
        }
    }

    #[test]
    fn json_bytes_are_deterministic() {
        let manifest = RunManifest::new("rank", vec!["--seed".into(), "7".into()], 7);
        let weights = FeatureWeights {
            weights: vec![0.25, -0.125],
            k: 10,
            m: SampleCount::All,
            seed: 7,
            warnings: vec![],
        };
        let rank = windrank_core::relief::rank_features(&weights);
        let file = RanksFile::new(vec!["a".into(), "b".into()], &weights, &rank, manifest);
        assert_eq!(to_json_bytes(&file), to_json_bytes(&file.clone()));
    }
}
