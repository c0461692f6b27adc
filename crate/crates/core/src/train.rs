//! Training loop for the cascade network.
//!
//! Full-batch Levenberg-Marquardt with validation-based early stopping.
//! Each epoch performs one accepted parameter update: candidate steps
//! solve `(J^T J + mu*I) d = -J^T r`, and a step is only accepted when it
//! strictly lowers the training MSE; otherwise `mu` grows tenfold and the
//! step is retried, so accepted steps never increase the training error.
//! Training stops when `mu` overflows its cap, the epoch budget runs out,
//! or the validation MSE rises `patience` epochs in a row. The returned
//! network carries the weights from the epoch with the lowest recorded
//! validation MSE, with epoch 0 (the initial weights) included.
//!
//! A plain gradient-descent-with-momentum optimizer is available as a
//! cross-checking fallback.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::cascade::{init_network, CascadeNetwork, NetError};
use crate::linalg::solve_spd;
use crate::matrix::FeatureMatrix;
use crate::metrics;
use crate::rng;
use crate::scale::NormalizationParams;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TrainError {
    #[error("{rows} training row(s), need at least {needed}")]
    InsufficientData { rows: usize, needed: usize },
    #[error("training loss became non-finite at epoch {epoch}")]
    DivergedLoss { epoch: usize },
    #[error("validation fraction {got} outside (0, 1)")]
    InvalidValidationFraction { got: f64 },
    #[error("max_epochs must be at least 1")]
    NoEpochBudget,
    #[error("network has {net} hidden units but config says {config}")]
    HiddenMismatch { net: usize, config: usize },
    #[error("sweep range invalid: delta {delta} exceeds base {base}")]
    SweepRange { base: usize, delta: usize },
    #[error(transparent)]
    Net(#[from] NetError),
    #[error(transparent)]
    Metrics(#[from] metrics::MetricsError),
}

/// Optimizer choice and its knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Optimizer {
    LevenbergMarquardt { mu0: f64, mu_increase: f64, mu_decrease: f64, mu_max: f64 },
    GradientDescent { learning_rate: f64, momentum: f64 },
}

impl Default for Optimizer {
    fn default() -> Self {
        Optimizer::LevenbergMarquardt {
            mu0: 1e-3,
            mu_increase: 10.0,
            mu_decrease: 10.0,
            mu_max: 1e10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub seed: u64,
    pub max_epochs: usize,
    /// Fraction of the training rows held out for early stopping,
    /// selected by a seeded shuffle.
    pub validation_fraction: f64,
    /// Consecutive validation-MSE increases tolerated before stopping.
    pub patience: usize,
    pub n_hidden: usize,
    pub optimizer: Optimizer,
}

impl Default for TrainConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            max_epochs: 1000,
            validation_fraction: 0.15,
            patience: 6,
            n_hidden: 10,
            optimizer: Optimizer::default(),
        }
    }
}

/// Why an epoch loop ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Patience,
    MaxEpochs,
    MuOverflow,
}

/// Loss history and the best-validation network of one training run.
///
/// All MSE series are in the scaled target space and indexed by epoch,
/// with entry 0 recorded at the initial weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainReport {
    pub train_mse: Vec<f64>,
    pub val_mse: Vec<f64>,
    /// Optional held-out series; purely informational, never consulted
    /// for stopping.
    pub monitor_mse: Option<Vec<f64>>,
    /// Epoch with minimal validation MSE; the returned network carries
    /// these weights.
    pub best_epoch: usize,
    pub stop: StopReason,
    pub network: CascadeNetwork,
}

/// Train on scaled data. See [`train_with_monitor`].
pub fn train(
    net: CascadeNetwork,
    data: &FeatureMatrix,
    config: &TrainConfig,
) -> Result<TrainReport, TrainError> {
    train_with_monitor(net, data, None, config)
}

/// Train on scaled data, optionally tracking a held-out monitor set
/// (reported per epoch, never used for stopping).
pub fn train_with_monitor(
    net: CascadeNetwork,
    data: &FeatureMatrix,
    monitor: Option<&FeatureMatrix>,
    config: &TrainConfig,
) -> Result<TrainReport, TrainError> {
    if !(config.validation_fraction > 0.0 && config.validation_fraction < 1.0) {
        return Err(TrainError::InvalidValidationFraction { got: config.validation_fraction });
    }
    if config.max_epochs == 0 {
        return Err(TrainError::NoEpochBudget);
    }
    if net.n_hidden() != config.n_hidden {
        return Err(TrainError::HiddenMismatch { net: net.n_hidden(), config: config.n_hidden });
    }
    let n = data.n_rows();
    if n < 10 {
        return Err(TrainError::InsufficientData { rows: n, needed: 10 });
    }

    let (fit_set, val_set) = validation_split(data, config)?;
    let mut state = match config.optimizer {
        Optimizer::LevenbergMarquardt { mu0, .. } => OptimizerState::Lm { mu: mu0 },
        Optimizer::GradientDescent { .. } => {
            OptimizerState::Gd { velocity: vec![0.0; net.n_params()] }
        }
    };

    let mut net = net;
    let mut train_mse = Vec::with_capacity(config.max_epochs + 1);
    let mut val_mse = Vec::with_capacity(config.max_epochs + 1);
    let mut monitor_mse = monitor.map(|_| Vec::with_capacity(config.max_epochs + 1));

    let record = |net: &CascadeNetwork,
                      train_mse: &mut Vec<f64>,
                      val_mse: &mut Vec<f64>,
                      monitor_mse: &mut Option<Vec<f64>>|
     -> Result<(f64, f64), TrainError> {
        let tm = net.batch_mse(&fit_set)?;
        let vm = net.batch_mse(&val_set)?;
        train_mse.push(tm);
        val_mse.push(vm);
        if let (Some(series), Some(m)) = (monitor_mse.as_mut(), monitor) {
            series.push(net.batch_mse(m)?);
        }
        Ok((tm, vm))
    };

    let (tm0, vm0) = record(&net, &mut train_mse, &mut val_mse, &mut monitor_mse)?;
    if !tm0.is_finite() || !vm0.is_finite() {
        return Err(TrainError::DivergedLoss { epoch: 0 });
    }
    let mut best_epoch = 0usize;
    let mut best_val = vm0;
    let mut best_params = net.params();
    let mut rises = 0usize;
    let mut stop = StopReason::MaxEpochs;

    for epoch in 1..=config.max_epochs {
        let stepped = match (&config.optimizer, &mut state) {
            (Optimizer::LevenbergMarquardt { mu_increase, mu_decrease, mu_max, .. },
             OptimizerState::Lm { mu }) => {
                lm_epoch(&mut net, &fit_set, mu, *mu_increase, *mu_decrease, *mu_max)?
            }
            (Optimizer::GradientDescent { learning_rate, momentum },
             OptimizerState::Gd { velocity }) => {
                gd_epoch(&mut net, &fit_set, *learning_rate, *momentum, velocity)?;
                true
            }
            _ => unreachable!("state matches optimizer"),
        };
        if !stepped {
            stop = StopReason::MuOverflow;
            break;
        }

        let (tm, vm) = record(&net, &mut train_mse, &mut val_mse, &mut monitor_mse)?;
        if !tm.is_finite() || !vm.is_finite() {
            return Err(TrainError::DivergedLoss { epoch });
        }
        if vm < best_val {
            best_val = vm;
            best_epoch = epoch;
            best_params = net.params();
        }
        if vm > val_mse[epoch - 1] {
            rises += 1;
            if rises > config.patience {
                stop = StopReason::Patience;
                break;
            }
        } else {
            rises = 0;
        }
    }

    net.set_params(&best_params)?;
    Ok(TrainReport { train_mse, val_mse, monitor_mse, best_epoch, stop, network: net })
}

enum OptimizerState {
    Lm { mu: f64 },
    Gd { velocity: Vec<f64> },
}

/// Split rows into (fit, validation) index sets by a seeded shuffle, then
/// materialize them in ascending row order.
fn validation_split(
    data: &FeatureMatrix,
    config: &TrainConfig,
) -> Result<(FeatureMatrix, FeatureMatrix), TrainError> {
    let n = data.n_rows();
    let n_val = ((n as f64 * config.validation_fraction) as usize).clamp(1, n - 1);
    let mut indices: Vec<usize> = (0..n).collect();
    let mut rng = rng::seeded(config.seed);
    rng::shuffle(&mut rng, &mut indices);
    let mut val_rows: Vec<usize> = indices[..n_val].to_vec();
    let mut fit_rows: Vec<usize> = indices[n_val..].to_vec();
    val_rows.sort_unstable();
    fit_rows.sort_unstable();
    Ok((subset(data, &fit_rows), subset(data, &val_rows)))
}

fn subset(data: &FeatureMatrix, rows: &[usize]) -> FeatureMatrix {
    let mut flat = Vec::with_capacity(rows.len() * data.n_cols());
    let mut target = Vec::with_capacity(rows.len());
    let mut origin = Vec::new();
    for &r in rows {
        flat.extend_from_slice(data.row(r));
        target.push(data.target()[r]);
        if !data.row_origin().is_empty() {
            origin.push(data.row_origin()[r]);
        }
    }
    FeatureMatrix::from_parts(flat, data.n_cols(), target, data.feature_names().to_vec(), origin)
        .expect("subset of a valid matrix is valid")
}

/// One Levenberg-Marquardt epoch: raise `mu` until a damped Gauss-Newton
/// step strictly reduces the training SSE, then accept it and relax `mu`.
/// Returns `false` when `mu` overflows before any step is accepted.
fn lm_epoch(
    net: &mut CascadeNetwork,
    fit: &FeatureMatrix,
    mu: &mut f64,
    mu_increase: f64,
    mu_decrease: f64,
    mu_max: f64,
) -> Result<bool, TrainError> {
    let n = fit.n_rows();
    let p = net.n_params();

    // Residuals and Jacobian of predictions at the current weights.
    let mut jacobian = vec![0.0f64; n * p];
    let mut residuals = vec![0.0f64; n];
    for (row_index, (row, &t)) in fit.rows().zip(fit.target()).enumerate() {
        let y = net.prediction_tangent(row, &mut jacobian[row_index * p..(row_index + 1) * p]);
        residuals[row_index] = y - t;
    }
    let sse: f64 = residuals.iter().map(|r| r * r).sum();

    // Normal equations: J^T J and J^T r.
    let mut jtj = vec![0.0f64; p * p];
    let mut jtr = vec![0.0f64; p];
    for row_index in 0..n {
        let row = &jacobian[row_index * p..(row_index + 1) * p];
        let r = residuals[row_index];
        for a in 0..p {
            jtr[a] += row[a] * r;
            for b in a..p {
                jtj[a * p + b] += row[a] * row[b];
            }
        }
    }
    for a in 0..p {
        for b in 0..a {
            jtj[a * p + b] = jtj[b * p + a];
        }
    }

    let params = net.params();
    let mut damped = vec![0.0f64; p * p];
    loop {
        damped.copy_from_slice(&jtj);
        for d in 0..p {
            damped[d * p + d] += *mu;
        }
        let neg_jtr: Vec<f64> = jtr.iter().map(|g| -g).collect();
        let accepted = if let Some(step) = solve_spd(&damped, p, &neg_jtr) {
            let candidate: Vec<f64> = params.iter().zip(&step).map(|(w, d)| w + d).collect();
            net.set_params(&candidate)?;
            let new_sse: f64 = fit
                .rows()
                .zip(fit.target())
                .map(|(row, &t)| {
                    let r = net.forward_unchecked(row) - t;
                    r * r
                })
                .sum();
            new_sse.is_finite() && new_sse < sse
        } else {
            false
        };
        if accepted {
            *mu = (*mu / mu_decrease).max(1e-20);
            return Ok(true);
        }
        net.set_params(&params)?;
        *mu *= mu_increase;
        if *mu > mu_max {
            return Ok(false);
        }
    }
}

/// One full-batch gradient descent epoch with momentum.
fn gd_epoch(
    net: &mut CascadeNetwork,
    fit: &FeatureMatrix,
    learning_rate: f64,
    momentum: f64,
    velocity: &mut [f64],
) -> Result<(), TrainError> {
    let grad = net.gradients(fit)?;
    let mut params = net.params();
    for ((v, g), w) in velocity.iter_mut().zip(&grad).zip(params.iter_mut()) {
        *v = momentum * *v - learning_rate * g;
        *w += *v;
    }
    net.set_params(&params)?;
    Ok(())
}

/// One row of a hidden-neuron sensitivity sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTrial {
    pub n_hidden: usize,
    pub seed: u64,
    /// Held-out MAPE (%) in original units; absent when the trial failed
    /// or every actual value was zero.
    pub mape: Option<f64>,
    /// Training error, when the trial failed.
    pub error: Option<String>,
    /// Marks the row with the smallest MAPE.
    pub selected: bool,
}

/// Retrain at every hidden count in `[base - delta, base + delta]`, each
/// trial with its own derived seed, and report held-out MAPE per trial
/// (computed in original units via `params`). Rows are ordered by
/// `n_hidden`; training failures are recorded per row rather than
/// aborting the sweep.
pub fn sensitivity_sweep(
    base_hidden: usize,
    delta: usize,
    train_data: &FeatureMatrix,
    holdout: &FeatureMatrix,
    params: &NormalizationParams,
    config: &TrainConfig,
) -> Result<Vec<SweepTrial>, TrainError> {
    if delta > base_hidden {
        return Err(TrainError::SweepRange { base: base_hidden, delta });
    }
    let actual: Vec<f64> = holdout.target().iter().map(|&t| params.inverse_target(t)).collect();
    let mut trials = Vec::new();
    for n_hidden in base_hidden - delta..=base_hidden + delta {
        let seed = rng::derive_seed(config.seed, n_hidden as u64);
        let trial_config = TrainConfig { n_hidden, seed, ..config.clone() };
        let outcome = init_network(train_data.n_cols(), n_hidden, seed)
            .map_err(TrainError::from)
            .and_then(|net| train(net, train_data, &trial_config))
            .and_then(|report| {
                let predicted: Vec<f64> = report
                    .network
                    .predict_batch(holdout)?
                    .iter()
                    .map(|&y| params.inverse_target(y))
                    .collect();
                Ok(metrics::compute_metrics(&predicted, &actual)?)
            });
        match outcome {
            Ok(report) => trials.push(SweepTrial {
                n_hidden,
                seed,
                mape: report.mape,
                error: None,
                selected: false,
            }),
            Err(e) => trials.push(SweepTrial {
                n_hidden,
                seed,
                mape: None,
                error: Some(e.to_string()),
                selected: false,
            }),
        }
    }
    if let Some(best) = trials
        .iter()
        .enumerate()
        .filter_map(|(i, t)| t.mape.map(|m| (i, m)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
    {
        trials[best.0].selected = true;
    }
    Ok(trials)
}
