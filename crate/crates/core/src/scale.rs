//! Min-max normalization of feature matrices.
//!
//! Each non-constant column is mapped affinely onto `[0, 1]`; constant
//! columns carry no information, so they are mapped to all zeros and
//! flagged (Relief then reports weight 0 for them instead of dividing by
//! a zero range). The target gets the same treatment with its own range,
//! and the fitted parameters invert the transform exactly enough to
//! recover the original values to ~1e-12.

use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::matrix::FeatureMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScaleError {
    #[error("non-finite value at row {row}, column {col}")]
    NonFiniteInput { row: usize, col: usize },
    #[error("column index {index} out of range for {n_cols} columns")]
    ColumnOutOfRange { index: usize, n_cols: usize },
}

/// Per-column min/max fitted on one matrix, plus the flagged constant
/// columns and the target range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NormalizationParams {
    feature_min: Vec<f64>,
    feature_max: Vec<f64>,
    constant_features: Vec<usize>,
    target_min: f64,
    target_max: f64,
}

impl NormalizationParams {
    /// Fit column and target ranges on a matrix.
    pub fn fit(matrix: &FeatureMatrix) -> Result<Self, ScaleError> {
        let n_cols = matrix.n_cols();
        let mut min = Vec::with_capacity(n_cols);
        let mut max = Vec::with_capacity(n_cols);
        for col in 0..n_cols {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for row in 0..matrix.n_rows() {
                let v = matrix.value(row, col);
                if !v.is_finite() {
                    return Err(ScaleError::NonFiniteInput { row, col });
                }
                lo = lo.min(v);
                hi = hi.max(v);
            }
            min.push(lo);
            max.push(hi);
        }
        let constant = (0..n_cols).filter(|&c| min[c] == max[c]).collect();
        let (tmin, tmax) = matrix
            .target()
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &t| (lo.min(t), hi.max(t)));
        Ok(Self {
            feature_min: min,
            feature_max: max,
            constant_features: constant,
            target_min: tmin,
            target_max: tmax,
        })
    }

    pub fn n_cols(&self) -> usize {
        self.feature_min.len()
    }

    pub fn feature_min(&self, col: usize) -> f64 {
        self.feature_min[col]
    }

    pub fn feature_max(&self, col: usize) -> f64 {
        self.feature_max[col]
    }

    /// `max - min` of a column; 0 for constant columns.
    pub fn feature_range(&self, col: usize) -> f64 {
        self.feature_max[col] - self.feature_min[col]
    }

    pub fn is_constant(&self, col: usize) -> bool {
        self.feature_range(col) == 0.0
    }

    /// Indices of the flagged constant columns.
    pub fn constant_features(&self) -> &[usize] {
        &self.constant_features
    }

    pub fn target_min(&self) -> f64 {
        self.target_min
    }

    pub fn target_max(&self) -> f64 {
        self.target_max
    }

    pub fn target_range(&self) -> f64 {
        self.target_max - self.target_min
    }

    pub fn scale_feature(&self, col: usize, v: f64) -> f64 {
        if self.is_constant(col) {
            0.0
        } else {
            (v - self.feature_min[col]) / self.feature_range(col)
        }
    }

    pub fn inverse_feature(&self, col: usize, scaled: f64) -> f64 {
        self.feature_min[col] + scaled * self.feature_range(col)
    }

    pub fn scale_target(&self, t: f64) -> f64 {
        if self.target_range() == 0.0 {
            0.0
        } else {
            (t - self.target_min) / self.target_range()
        }
    }

    pub fn inverse_target(&self, scaled: f64) -> f64 {
        self.target_min + scaled * self.target_range()
    }

    /// Scale a raw feature row in place (used when applying a stored
    /// model to new data).
    pub fn scale_row(&self, row: &mut [f64]) {
        for (col, v) in row.iter_mut().enumerate() {
            *v = self.scale_feature(col, *v);
        }
    }

    /// Parameters restricted to the given columns, in the given order.
    /// The target range is kept as is.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self, ScaleError> {
        for &c in cols {
            if c >= self.n_cols() {
                return Err(ScaleError::ColumnOutOfRange { index: c, n_cols: self.n_cols() });
            }
        }
        let min: Vec<f64> = cols.iter().map(|&c| self.feature_min[c]).collect();
        let max: Vec<f64> = cols.iter().map(|&c| self.feature_max[c]).collect();
        let constant = (0..cols.len()).filter(|&c| min[c] == max[c]).collect();
        Ok(Self {
            feature_min: min,
            feature_max: max,
            constant_features: constant,
            target_min: self.target_min,
            target_max: self.target_max,
        })
    }
}

/// Scale every column and the target onto `[0, 1]`.
///
/// Returns the scaled matrix and the fitted parameters that invert the
/// transform. Constant columns come out all-zero and flagged in the
/// parameters.
pub fn minmax_scale(
    matrix: &FeatureMatrix,
) -> Result<(FeatureMatrix, NormalizationParams), ScaleError> {
    let params = NormalizationParams::fit(matrix)?;
    let scaled = apply_scale(matrix, &params);
    Ok((scaled, params))
}

/// Scale a matrix with previously fitted parameters (e.g. test rows with
/// the training-set ranges). Values outside the fitted range land outside
/// `[0, 1]`, which is intended.
pub fn apply_scale(matrix: &FeatureMatrix, params: &NormalizationParams) -> FeatureMatrix {
    let n_cols = matrix.n_cols();
    let mut data = Vec::with_capacity(matrix.n_rows() * n_cols);
    for row in matrix.rows() {
        for (col, &v) in row.iter().enumerate() {
            data.push(params.scale_feature(col, v));
        }
    }
    let target = matrix.target().iter().map(|&t| params.scale_target(t)).collect();
    FeatureMatrix::from_parts(
        data,
        n_cols,
        target,
        matrix.feature_names().to_vec(),
        matrix.row_origin().to_vec(),
    )
    .expect("scaling a valid matrix preserves shape and finiteness")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn column_matrix(col: &[f64]) -> FeatureMatrix {
        let rows: Vec<Vec<f64>> = col.iter().map(|&v| vec![v]).collect();
        FeatureMatrix::from_rows(&rows, vec![0.0; col.len()]).unwrap()
    }

    #[test]
    fn endpoints_and_midpoint() {
        let (scaled, params) = minmax_scale(&column_matrix(&[0.0, 5.0, 10.0])).unwrap();
        assert_eq!(scaled.value(0, 0), 0.0);
        assert_eq!(scaled.value(1, 0), 0.5);
        assert_eq!(scaled.value(2, 0), 1.0);
        assert!(!params.is_constant(0));
    }

    #[test]
    fn constant_column_zeroed_and_flagged() {
        let (scaled, params) = minmax_scale(&column_matrix(&[7.0, 7.0, 7.0])).unwrap();
        for row in 0..3 {
            assert_eq!(scaled.value(row, 0), 0.0);
        }
        assert_eq!(params.constant_features(), &[0]);
        // Inverse of the flagged column recovers the constant exactly.
        assert_eq!(params.inverse_feature(0, 0.0), 7.0);
    }

    #[test]
    fn target_scaled_with_own_range() {
        let m = FeatureMatrix::from_rows(&[vec![1.0], vec![2.0]], vec![10.0, 30.0]).unwrap();
        let (scaled, params) = minmax_scale(&m).unwrap();
        assert_eq!(scaled.target(), &[0.0, 1.0]);
        assert_eq!(params.inverse_target(0.5), 20.0);
    }

    #[test]
    fn round_trip_on_seeded_random_matrix() {
        let mut rng = crate::rng::seeded(99);
        let rows: Vec<Vec<f64>> = (0..40)
            .map(|_| (0..6).map(|_| crate::rng::uniform(&mut rng, -30.0, 250.0)).collect())
            .collect();
        let target: Vec<f64> = (0..40).map(|_| crate::rng::uniform(&mut rng, 0.0, 12.0)).collect();
        let m = FeatureMatrix::from_rows(&rows, target).unwrap();
        let (scaled, params) = minmax_scale(&m).unwrap();
        for r in 0..m.n_rows() {
            for c in 0..m.n_cols() {
                let back = params.inverse_feature(c, scaled.value(r, c));
                assert!(
                    crate::math::abs(back - m.value(r, c)) < 1e-12,
                    "row {r} col {c}: {back} vs {}",
                    m.value(r, c)
                );
            }
            let back = params.inverse_target(scaled.target()[r]);
            assert!(crate::math::abs(back - m.target()[r]) < 1e-12);
        }
    }

    #[test]
    fn select_columns_keeps_ranges() {
        let m = FeatureMatrix::from_rows(&[vec![0.0, 4.0, 5.0], vec![2.0, 8.0, 5.0]], vec![0.0, 1.0])
            .unwrap();
        let params = NormalizationParams::fit(&m).unwrap();
        let sel = params.select_columns(&[2, 0]).unwrap();
        assert!(sel.is_constant(0));
        assert_eq!(sel.feature_range(1), 2.0);
        assert_eq!(sel.constant_features(), &[0]);
        assert!(params.select_columns(&[9]).is_err());
    }
}
