//! Wind power conversion and reference forecasting baselines.
//!
//! [`wind_power`] is the kinetic power law `P = 1/2 * rho * A * v^3`.
//! The baselines are the persistence forecaster (repeat the last
//! observation) and a two-lag linear autoregression fitted by ordinary
//! least squares; both exist as reference points for the cascade model.

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::math;

/// Standard sea-level air density, kg/m³.
pub const DEFAULT_AIR_DENSITY: f64 = 1.225;

/// Ridge added to degenerate lag-model normal equations so series like
/// constant wind still produce finite coefficients.
const LAG_RIDGE: f64 = 1e-10;

/// Relative determinant threshold below which the lag-model normal
/// equations are treated as rank deficient.
const LAG_RANK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WindModelError {
    #[error("wind speed must be non-negative, got {speed}")]
    NegativeSpeed { speed: f64 },
    #[error("air density and rotor area must be positive and finite (rho = {rho}, area = {area})")]
    InvalidSpec { rho: f64, area: f64 },
    #[error("series is empty")]
    EmptySeries,
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("series has {rows} values, need at least {needed}")]
    InsufficientData { rows: usize, needed: usize },
    #[error("window must hold the last {expected} observations, got {got}")]
    BadWindow { got: usize, expected: usize },
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
}

/// Air density and rotor swept area for power conversion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerSpec {
    /// kg/m³.
    pub rho: f64,
    /// m².
    pub area: f64,
}

impl PowerSpec {
    pub fn new(rho: f64, area: f64) -> Result<Self, WindModelError> {
        if rho > 0.0 && area > 0.0 && rho.is_finite() && area.is_finite() {
            Ok(Self { rho, area })
        } else {
            Err(WindModelError::InvalidSpec { rho, area })
        }
    }

    /// Unit swept area at standard sea-level density: power density in
    /// W/m².
    pub fn unit() -> Self {
        Self { rho: DEFAULT_AIR_DENSITY, area: 1.0 }
    }
}

/// Kinetic power (W) carried by wind at speed `v` (m/s).
pub fn wind_power(spec: &PowerSpec, v: f64) -> Result<f64, WindModelError> {
    if !(v >= 0.0) || !v.is_finite() {
        return Err(WindModelError::NegativeSpeed { speed: v });
    }
    Ok(0.5 * spec.rho * spec.area * math::cube(v))
}

/// Persistence baseline: every forecast step repeats the last observed
/// value.
pub fn persistence_forecast(series: &[f64], horizon: usize) -> Result<Vec<f64>, WindModelError> {
    if series.is_empty() {
        return Err(WindModelError::EmptySeries);
    }
    if horizon == 0 {
        return Err(WindModelError::ZeroHorizon);
    }
    let last = *series.last().expect("non-empty");
    Ok(alloc::vec![last; horizon])
}

/// Two-lag linear autoregression `s[t+1] = a1*s[t] + a2*s[t-1] + c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LagModel {
    pub order: usize,
    /// Coefficient of the most recent observation.
    pub a1: f64,
    /// Coefficient of the second most recent observation.
    pub a2: f64,
    pub intercept: f64,
    /// Mean squared residual over the fitted samples.
    pub residual_mse: f64,
}

/// Accumulated 2x2 normal equations of a two-regressor least squares
/// problem.
struct Gram {
    s11: f64,
    s12: f64,
    s22: f64,
    s1y: f64,
    s2y: f64,
}

impl Gram {
    fn accumulate(x1: &[f64], x2: &[f64], y: &[f64]) -> Self {
        let mut g = Gram { s11: 0.0, s12: 0.0, s22: 0.0, s1y: 0.0, s2y: 0.0 };
        for t in 0..y.len() {
            g.s11 += x1[t] * x1[t];
            g.s12 += x1[t] * x2[t];
            g.s22 += x2[t] * x2[t];
            g.s1y += x1[t] * y[t];
            g.s2y += x2[t] * y[t];
        }
        g
    }

    fn is_rank_deficient(&self) -> bool {
        let det = self.s11 * self.s22 - self.s12 * self.s12;
        det <= LAG_RANK_TOL * self.s11 * self.s22
    }

    /// Solve for (a1, a2), with `ridge` added to the diagonal.
    fn solve(&self, ridge: f64) -> (f64, f64) {
        let d11 = self.s11 + ridge;
        let d22 = self.s22 + ridge;
        let det = d11 * d22 - self.s12 * self.s12;
        let a1 = (d22 * self.s1y - self.s12 * self.s2y) / det;
        let a2 = (d11 * self.s2y - self.s12 * self.s1y) / det;
        (a1, a2)
    }
}

/// Least-squares fit of the two-lag model over every admissible step of
/// the series.
///
/// The regular path is plain OLS on column-centered regressors, ridge-
/// stabilized per [`LAG_RIDGE`]. A noise-free trajectory of a recurrence
/// whose characteristic roots include 1 (such as `a1 = a2 = 0.5`) makes
/// the centered lag columns exactly collinear, and ridge OLS would then
/// pick the minimum-norm coefficient pair rather than the generating
/// one. That rank-deficient case falls back to the structural AR form:
/// center everything by the series mean and fit without an intercept,
/// which ties the intercept to `mean * (1 - a1 - a2)` and recovers the
/// generating coefficients exactly. A fully degenerate series (constant
/// wind) degrades once more to the ridge solution, yielding zero lag
/// coefficients with the intercept carrying the constant.
pub fn fit_lag_model(series: &[f64]) -> Result<LagModel, WindModelError> {
    if series.len() < 4 {
        return Err(WindModelError::InsufficientData { rows: series.len(), needed: 4 });
    }
    if let Some(index) = series.iter().position(|v| !v.is_finite()) {
        return Err(WindModelError::NonFinite { index });
    }

    // Samples: predict series[t+1] from (series[t], series[t-1]).
    let m = series.len() - 2;
    let x1: Vec<f64> = (1..series.len() - 1).map(|t| series[t]).collect();
    let x2: Vec<f64> = (1..series.len() - 1).map(|t| series[t - 1]).collect();
    let y: Vec<f64> = (1..series.len() - 1).map(|t| series[t + 1]).collect();

    let mx1 = math::mean(&x1);
    let mx2 = math::mean(&x2);
    let my = math::mean(&y);
    let centered = |v: &[f64], mean: f64| -> Vec<f64> { v.iter().map(|x| x - mean).collect() };

    let column_gram =
        Gram::accumulate(&centered(&x1, mx1), &centered(&x2, mx2), &centered(&y, my));
    let (a1, a2, intercept) = if !column_gram.is_rank_deficient() {
        let (a1, a2) = column_gram.solve(LAG_RIDGE);
        (a1, a2, my - a1 * mx1 - a2 * mx2)
    } else {
        let mu = math::mean(series);
        let structural_gram =
            Gram::accumulate(&centered(&x1, mu), &centered(&x2, mu), &centered(&y, mu));
        let (a1, a2) = if structural_gram.is_rank_deficient() {
            structural_gram.solve(LAG_RIDGE)
        } else {
            structural_gram.solve(0.0)
        };
        (a1, a2, mu * (1.0 - a1 - a2))
    };

    let residual_mse = (0..m)
        .map(|t| {
            let r = y[t] - (a1 * x1[t] + a2 * x2[t] + intercept);
            r * r
        })
        .sum::<f64>()
        / m as f64;

    Ok(LagModel { order: 2, a1, a2, intercept, residual_mse })
}

/// Recursive multi-step rollout of a fitted lag model. `window` holds the
/// last two observations as `[older, newer]`; from step two onward the
/// model consumes its own predictions.
pub fn lag_predict(
    model: &LagModel,
    window: &[f64],
    horizon: usize,
) -> Result<Vec<f64>, WindModelError> {
    if window.len() != 2 {
        return Err(WindModelError::BadWindow { got: window.len(), expected: 2 });
    }
    if let Some(index) = window.iter().position(|v| !v.is_finite()) {
        return Err(WindModelError::NonFinite { index });
    }
    if horizon == 0 {
        return Err(WindModelError::ZeroHorizon);
    }
    let (mut older, mut newer) = (window[0], window[1]);
    let mut out = Vec::with_capacity(horizon);
    for _ in 0..horizon {
        let next = model.a1 * newer + model.a2 * older + model.intercept;
        out.push(next);
        older = newer;
        newer = next;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn power_law_hand_values() {
        let spec = PowerSpec::unit();
        assert_eq!(wind_power(&spec, 0.0).unwrap(), 0.0);
        assert_eq!(wind_power(&spec, 10.0).unwrap(), 612.5);
        assert!(matches!(
            wind_power(&spec, -1.0),
            Err(WindModelError::NegativeSpeed { .. })
        ));
        assert!(PowerSpec::new(0.0, 1.0).is_err());
        assert!(PowerSpec::new(1.2, -3.0).is_err());
    }

    #[test]
    fn doubling_speed_multiplies_power_by_eight() {
        let spec = PowerSpec::new(1.1, 40.0).unwrap();
        let mut rng = crate::rng::seeded(15);
        for _ in 0..100 {
            let v = crate::rng::uniform(&mut rng, 0.1, 30.0);
            let p1 = wind_power(&spec, v).unwrap();
            let p2 = wind_power(&spec, 2.0 * v).unwrap();
            assert_eq!(p2, 8.0 * p1);
        }
    }

    #[test]
    fn power_is_monotone_in_every_argument() {
        let base = wind_power(&PowerSpec::new(1.2, 10.0).unwrap(), 5.0).unwrap();
        assert!(wind_power(&PowerSpec::new(1.3, 10.0).unwrap(), 5.0).unwrap() > base);
        assert!(wind_power(&PowerSpec::new(1.2, 11.0).unwrap(), 5.0).unwrap() > base);
        assert!(wind_power(&PowerSpec::new(1.2, 10.0).unwrap(), 5.5).unwrap() > base);
    }

    #[test]
    fn persistence_repeats_last_value() {
        assert_eq!(persistence_forecast(&[3.0, 4.0, 5.0], 1).unwrap(), vec![5.0]);
        assert_eq!(persistence_forecast(&[3.0, 4.0, 5.0], 3).unwrap(), vec![5.0; 3]);
        assert!(matches!(persistence_forecast(&[], 1), Err(WindModelError::EmptySeries)));
    }

    #[test]
    fn persistence_mae_equals_mean_abs_first_difference() {
        let mut rng = crate::rng::seeded(27);
        let series: Vec<f64> = (0..50).map(|_| crate::rng::uniform(&mut rng, 2.0, 9.0)).collect();
        // Rolling one-step persistence over the series.
        let mut abs_err_sum = 0.0;
        for t in 1..series.len() {
            let forecast = persistence_forecast(&series[..t], 1).unwrap()[0];
            abs_err_sum += math::abs(series[t] - forecast);
        }
        let mae = abs_err_sum / (series.len() - 1) as f64;
        let mean_abs_diff = series
            .windows(2)
            .map(|w| math::abs(w[1] - w[0]))
            .sum::<f64>()
            / (series.len() - 1) as f64;
        assert!(math::abs(mae - mean_abs_diff) < 1e-12);
    }

    #[test]
    fn recovers_noise_free_recurrence() {
        // s[t+1] = 0.5*s[t] + 0.5*s[t-1], short series so the regressors
        // stay well conditioned.
        let mut series = vec![0.0, 3.0];
        for t in 2..10 {
            series.push(0.5 * series[t - 1] + 0.5 * series[t - 2]);
        }
        let model = fit_lag_model(&series).unwrap();
        assert!(math::abs(model.a1 - 0.5) < 1e-9, "a1 = {}", model.a1);
        assert!(math::abs(model.a2 - 0.5) < 1e-9, "a2 = {}", model.a2);
        assert!(math::abs(model.intercept) < 1e-9, "c = {}", model.intercept);
        assert!(model.residual_mse < 1e-18);
    }

    #[test]
    fn recovers_recurrence_without_unit_root() {
        // Roots of z^2 = 0.6z + 0.2 are inside the unit disk and neither
        // equals 1, so the intercept-augmented fit is full rank and the
        // ridge-OLS path applies directly.
        let mut series = vec![1.0, 4.0];
        for t in 2..12 {
            series.push(0.6 * series[t - 1] + 0.2 * series[t - 2] + 0.7);
        }
        let model = fit_lag_model(&series).unwrap();
        assert!(math::abs(model.a1 - 0.6) < 1e-7, "a1 = {}", model.a1);
        assert!(math::abs(model.a2 - 0.2) < 1e-7, "a2 = {}", model.a2);
        assert!(math::abs(model.intercept - 0.7) < 1e-6, "c = {}", model.intercept);
    }

    #[test]
    fn constant_series_fits_intercept_only() {
        let model = fit_lag_model(&[4.2; 8]).unwrap();
        assert_eq!(model.a1, 0.0);
        assert_eq!(model.a2, 0.0);
        assert_eq!(model.intercept, 4.2);
        assert!(model.residual_mse < 1e-20);
    }

    #[test]
    fn short_series_rejected() {
        assert!(matches!(
            fit_lag_model(&[1.0, 2.0, 3.0]),
            Err(WindModelError::InsufficientData { rows: 3, needed: 4 })
        ));
    }

    #[test]
    fn residuals_orthogonal_to_regressors() {
        let mut rng = crate::rng::seeded(88);
        let series: Vec<f64> = (0..40).map(|_| crate::rng::uniform(&mut rng, 1.0, 8.0)).collect();
        let model = fit_lag_model(&series).unwrap();
        let mut dot1 = 0.0;
        let mut dot2 = 0.0;
        let mut dot0 = 0.0;
        for t in 1..series.len() - 1 {
            let r = series[t + 1] - (model.a1 * series[t] + model.a2 * series[t - 1] + model.intercept);
            dot1 += r * series[t];
            dot2 += r * series[t - 1];
            dot0 += r;
        }
        assert!(math::abs(dot0) < 1e-8, "intercept residual {dot0}");
        assert!(math::abs(dot1) < 1e-8, "lag-1 residual {dot1}");
        assert!(math::abs(dot2) < 1e-8, "lag-2 residual {dot2}");
    }

    #[test]
    fn rollout_feeds_predictions_back() {
        let model = LagModel { order: 2, a1: 0.5, a2: 0.5, intercept: 0.0, residual_mse: 0.0 };
        // window [older, newer] = [2, 4]
        assert_eq!(lag_predict(&model, &[2.0, 4.0], 2).unwrap(), vec![3.0, 3.5]);
        assert_eq!(lag_predict(&model, &[2.0, 4.0], 1).unwrap(), vec![3.0]);
        assert!(matches!(
            lag_predict(&model, &[1.0], 2),
            Err(WindModelError::BadWindow { got: 1, expected: 2 })
        ));
    }

    #[test]
    fn one_step_rollout_reproduces_fitted_values() {
        let mut rng = crate::rng::seeded(5);
        let series: Vec<f64> = (0..20).map(|_| crate::rng::uniform(&mut rng, 2.0, 7.0)).collect();
        let model = fit_lag_model(&series).unwrap();
        for t in 1..series.len() - 1 {
            let direct = model.a1 * series[t] + model.a2 * series[t - 1] + model.intercept;
            let rolled = lag_predict(&model, &[series[t - 1], series[t]], 1).unwrap()[0];
            assert_eq!(rolled, direct);
        }
    }
}
