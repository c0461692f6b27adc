//! Dense row-major feature matrix with an aligned target vector.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

/// Provenance of one matrix row: which site and month it came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowOrigin {
    pub site: usize,
    pub month: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix has no rows")]
    Empty,
    #[error("matrix has no feature columns")]
    NoColumns,
    #[error("row {row} has {len} values, expected {expected}")]
    RaggedRow { row: usize, len: usize, expected: usize },
    #[error("target has {target} values for {rows} rows")]
    TargetLength { rows: usize, target: usize },
    #[error("non-finite value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },
    #[error("non-finite target at row {row}")]
    NonFiniteTarget { row: usize },
    #[error("column index {index} out of range for {n_cols} columns")]
    ColumnOutOfRange { index: usize, n_cols: usize },
}

/// Instance-by-feature matrix plus a target value per row.
///
/// Immutable after construction; all entries are validated finite, so
/// downstream numeric code never has to re-check shape or NaNs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureMatrix {
    n_cols: usize,
    data: Vec<f64>,
    target: Vec<f64>,
    feature_names: Vec<String>,
    row_origin: Vec<RowOrigin>,
}

impl FeatureMatrix {
    /// Build from per-row slices with auto-generated column names
    /// (`f0`, `f1`, ...).
    pub fn from_rows(rows: &[Vec<f64>], target: Vec<f64>) -> Result<Self, MatrixError> {
        let n_cols = rows.first().map(|r| r.len()).unwrap_or(0);
        let names = (0..n_cols).map(|i| format!("f{i}")).collect();
        Self::from_parts(
            rows.iter().flat_map(|r| r.iter().copied()).collect(),
            Self::check_rows(rows)?,
            target,
            names,
            Vec::new(),
        )
    }

    fn check_rows(rows: &[Vec<f64>]) -> Result<usize, MatrixError> {
        let expected = rows.first().map(|r| r.len()).unwrap_or(0);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != expected {
                return Err(MatrixError::RaggedRow { row: i, len: row.len(), expected });
            }
        }
        Ok(expected)
    }

    /// Build from a flat row-major buffer.
    pub fn from_parts(
        data: Vec<f64>,
        n_cols: usize,
        target: Vec<f64>,
        feature_names: Vec<String>,
        row_origin: Vec<RowOrigin>,
    ) -> Result<Self, MatrixError> {
        if n_cols == 0 {
            return Err(MatrixError::NoColumns);
        }
        if data.is_empty() {
            return Err(MatrixError::Empty);
        }
        debug_assert_eq!(data.len() % n_cols, 0);
        let rows = data.len() / n_cols;
        if target.len() != rows {
            return Err(MatrixError::TargetLength { rows, target: target.len() });
        }
        debug_assert_eq!(feature_names.len(), n_cols);
        debug_assert!(row_origin.is_empty() || row_origin.len() == rows);
        for (i, v) in data.iter().enumerate() {
            if !v.is_finite() {
                return Err(MatrixError::NonFinite { row: i / n_cols, col: i % n_cols });
            }
        }
        if let Some(row) = target.iter().position(|t| !t.is_finite()) {
            return Err(MatrixError::NonFiniteTarget { row });
        }
        Ok(Self { n_cols, data, target, feature_names, row_origin })
    }

    pub fn n_rows(&self) -> usize {
        self.data.len() / self.n_cols
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.n_cols)
    }

    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.n_cols + col]
    }

    pub fn target(&self) -> &[f64] {
        &self.target
    }

    pub fn feature_names(&self) -> &[String] {
        &self.feature_names
    }

    pub fn row_origin(&self) -> &[RowOrigin] {
        &self.row_origin
    }

    /// New matrix holding only the given columns, in the given order.
    /// Target, names and row provenance are carried along.
    pub fn select_columns(&self, cols: &[usize]) -> Result<Self, MatrixError> {
        if cols.is_empty() {
            return Err(MatrixError::NoColumns);
        }
        for &c in cols {
            if c >= self.n_cols {
                return Err(MatrixError::ColumnOutOfRange { index: c, n_cols: self.n_cols });
            }
        }
        let mut data = Vec::with_capacity(self.n_rows() * cols.len());
        for row in self.rows() {
            data.extend(cols.iter().map(|&c| row[c]));
        }
        Ok(Self {
            n_cols: cols.len(),
            data,
            target: self.target.clone(),
            feature_names: cols.iter().map(|&c| self.feature_names[c].clone()).collect(),
            row_origin: self.row_origin.clone(),
        })
    }

    /// Same matrix with a replaced target vector.
    pub fn with_target(&self, target: Vec<f64>) -> Result<Self, MatrixError> {
        Self::from_parts(
            self.data.clone(),
            self.n_cols,
            target,
            self.feature_names.clone(),
            self.row_origin.clone(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn from_rows_shapes_and_access() {
        let m = FeatureMatrix::from_rows(
            &[vec![1.0, 2.0], vec![3.0, 4.0], vec![5.0, 6.0]],
            vec![0.1, 0.2, 0.3],
        )
        .unwrap();
        assert_eq!(m.n_rows(), 3);
        assert_eq!(m.n_cols(), 2);
        assert_eq!(m.row(1), &[3.0, 4.0]);
        assert_eq!(m.value(2, 1), 6.0);
        assert_eq!(m.feature_names(), &["f0", "f1"]);
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = FeatureMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0]], vec![0.0, 0.0]);
        assert_eq!(err.unwrap_err(), MatrixError::RaggedRow { row: 1, len: 1, expected: 2 });
    }

    #[test]
    fn rejects_target_length_mismatch() {
        let err = FeatureMatrix::from_rows(&[vec![1.0], vec![2.0]], vec![0.0]);
        assert_eq!(err.unwrap_err(), MatrixError::TargetLength { rows: 2, target: 1 });
    }

    #[test]
    fn rejects_non_finite() {
        let err = FeatureMatrix::from_rows(&[vec![1.0, f64::NAN]], vec![0.0]);
        assert_eq!(err.unwrap_err(), MatrixError::NonFinite { row: 0, col: 1 });
        let err = FeatureMatrix::from_rows(&[vec![1.0]], vec![f64::INFINITY]);
        assert_eq!(err.unwrap_err(), MatrixError::NonFiniteTarget { row: 0 });
    }

    #[test]
    fn select_columns_reorders() {
        let m = FeatureMatrix::from_rows(&[vec![1.0, 2.0, 3.0], vec![4.0, 5.0, 6.0]], vec![9.0, 8.0])
            .unwrap();
        let s = m.select_columns(&[2, 0]).unwrap();
        assert_eq!(s.row(0), &[3.0, 1.0]);
        assert_eq!(s.row(1), &[6.0, 4.0]);
        assert_eq!(s.feature_names(), &["f2", "f0"]);
        assert_eq!(s.target(), &[9.0, 8.0]);
        assert!(m.select_columns(&[3]).is_err());
    }
}
