//! Relief-family feature weighting.
//!
//! The estimators score an attribute by how well it separates nearest
//! instances with different outcomes while staying flat across nearest
//! instances with similar outcomes:
//!
//! - [`relief_weights`]: the original binary-class form. Each sampled
//!   instance contributes the diff to its single nearest miss minus the
//!   diff to its single nearest hit.
//! - [`relieff_weights`]: averages over the `k` nearest hits and `k`
//!   nearest misses for noise robustness; `k` is clamped to the
//!   neighbors actually available, with a warning.
//! - [`rrelieff_weights`]: the regression variant. With a continuous
//!   target there is no hit/miss cut, so the estimator accumulates, over
//!   the `k` nearest neighbors of each sampled instance, the probability
//!   mass of "target differs" (`n_dc`), "attribute differs" (`n_da`) and
//!   their conjunction (`n_dcda`), with rank-weighted neighbor
//!   contributions, and combines them into
//!   `W[A] = n_dcda/n_dc - (n_da - n_dcda)/(m - n_dc)`.
//!
//! Attribute and target differences are range-normalized absolute
//! differences in `[0, 1]`; instance distance is their Manhattan sum.
//! Constant columns diff to 0 and therefore weigh exactly 0. Neighbor
//! ties break toward the lower row index, the self-instance is never its
//! own neighbor, and sampling order is fixed, so results are
//! deterministic for a given seed.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use serde::{Deserialize, Serialize};

use crate::math;
use crate::matrix::FeatureMatrix;
use crate::rng;
use crate::scale::NormalizationParams;

/// Exponential decay constant (in ranks) for neighbor influence in the
/// regression variant.
const RANK_SIGMA: f64 = 20.0;

/// How many instances a Relief pass visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleCount {
    /// Every instance exactly once, in row order. The default: removes
    /// sampling variance entirely on small datasets.
    All,
    /// This many instances drawn with replacement by the seeded
    /// generator.
    Count(usize),
}

impl Serialize for SampleCount {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            SampleCount::All => serializer.serialize_str("all"),
            SampleCount::Count(n) => serializer.serialize_u64(*n as u64),
        }
    }
}

impl<'de> Deserialize<'de> for SampleCount {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct Visitor;
        impl serde::de::Visitor<'_> for Visitor {
            type Value = SampleCount;

            fn expecting(&self, f: &mut core::fmt::Formatter) -> core::fmt::Result {
                f.write_str("\"all\" or a sample count")
            }

            fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<SampleCount, E> {
                if v == "all" {
                    Ok(SampleCount::All)
                } else {
                    Err(E::custom(format!("expected \"all\" or a number, got {v:?}")))
                }
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<SampleCount, E> {
                Ok(SampleCount::Count(v as usize))
            }
        }
        deserializer.deserialize_any(Visitor)
    }
}

impl core::fmt::Display for SampleCount {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SampleCount::All => f.write_str("all"),
            SampleCount::Count(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReliefError {
    #[error("all instances share one class; need both classes present")]
    SingleClass,
    #[error("{rows} instance(s) available, need at least {needed}")]
    InsufficientData { rows: usize, needed: usize },
    #[error("all target values are equal; cannot normalize target differences")]
    ZeroTargetRange,
    #[error("feature index {index} out of range for {n_cols} columns")]
    IndexOutOfRange { index: usize, n_cols: usize },
    #[error("got {got} labels/targets for {rows} rows")]
    LabelLength { got: usize, rows: usize },
    #[error("target at row {row} is not finite")]
    NonFiniteTarget { row: usize },
    #[error("k must be at least 1")]
    ZeroNeighbors,
}

/// Per-attribute weights plus the parameters that produced them.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FeatureWeights {
    /// One weight per feature column, each in `[-1, 1]`.
    pub weights: Vec<f64>,
    /// Neighbor count used (1 for plain Relief).
    pub k: usize,
    /// Instances visited.
    pub m: SampleCount,
    /// Seed that drove any sampling.
    pub seed: u64,
    /// Non-fatal notes, e.g. `k` clamping.
    pub warnings: Vec<String>,
}

/// Descending-weight ordering of the features.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankResult {
    /// Feature indices from most to least relevant.
    pub order: Vec<usize>,
    /// 1-based rank per feature index (`ranks[f] == 1` means `f` is most
    /// relevant).
    pub ranks: Vec<usize>,
}

/// Range-normalized absolute difference of one attribute between two
/// instances: `|a[f] - b[f]| / (max[f] - min[f])`, 0 for flagged constant
/// columns, clamped into `[0, 1]`.
pub fn feature_diff(
    feature: usize,
    a: &[f64],
    b: &[f64],
    params: &NormalizationParams,
) -> Result<f64, ReliefError> {
    if feature >= params.n_cols() || feature >= a.len() || feature >= b.len() {
        return Err(ReliefError::IndexOutOfRange {
            index: feature,
            n_cols: params.n_cols().min(a.len()).min(b.len()),
        });
    }
    Ok(diff_unchecked(feature, a, b, params))
}

#[inline]
fn diff_unchecked(feature: usize, a: &[f64], b: &[f64], params: &NormalizationParams) -> f64 {
    let range = params.feature_range(feature);
    if range == 0.0 {
        return 0.0;
    }
    let d = math::abs(a[feature] - b[feature]) / range;
    if d > 1.0 {
        1.0
    } else {
        d
    }
}

/// Manhattan distance: sum of per-feature diffs.
fn manhattan(matrix: &FeatureMatrix, params: &NormalizationParams, i: usize, j: usize) -> f64 {
    let (a, b) = (matrix.row(i), matrix.row(j));
    (0..matrix.n_cols()).map(|f| diff_unchecked(f, a, b, params)).sum()
}

/// The row indices a pass visits, in order.
fn sampled_rows(n: usize, m: SampleCount, seed: u64) -> (Vec<usize>, usize) {
    match m {
        SampleCount::All => ((0..n).collect(), n),
        SampleCount::Count(c) => {
            let mut rng = rng::seeded(seed);
            ((0..c).map(|_| rng::index(&mut rng, n)).collect(), c)
        }
    }
}

/// Sort key for neighbor candidates: distance first, then row index.
fn sort_neighbors(candidates: &mut [(f64, usize)]) {
    candidates.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
}

/// Original binary Relief: single nearest hit and nearest miss.
pub fn relief_weights(
    matrix: &FeatureMatrix,
    labels: &[bool],
    m: SampleCount,
    seed: u64,
) -> Result<FeatureWeights, ReliefError> {
    relieff_weights(matrix, labels, 1, m, seed)
}

/// ReliefF: diffs averaged over the `k` nearest hits and `k` nearest
/// misses of each sampled instance.
pub fn relieff_weights(
    matrix: &FeatureMatrix,
    labels: &[bool],
    k: usize,
    m: SampleCount,
    seed: u64,
) -> Result<FeatureWeights, ReliefError> {
    if k == 0 {
        return Err(ReliefError::ZeroNeighbors);
    }
    let n = matrix.n_rows();
    if labels.len() != n {
        return Err(ReliefError::LabelLength { got: labels.len(), rows: n });
    }
    if n < 2 {
        return Err(ReliefError::InsufficientData { rows: n, needed: 2 });
    }
    let positives = labels.iter().filter(|&&l| l).count();
    if positives == 0 || positives == n {
        return Err(ReliefError::SingleClass);
    }

    let params = NormalizationParams::fit(matrix).expect("matrix entries are finite");
    let mut warnings = Vec::new();
    let max_hits = positives.min(n - positives) - 1;
    let max_misses = positives.min(n - positives);
    if k > max_hits || k > max_misses {
        warnings.push(format!(
            "k={k} exceeds available neighbors; clamped to at most {max_hits} hit(s) and \
             {max_misses} miss(es) per instance"
        ));
        log::warn!("{}", warnings.last().expect("just pushed"));
    }

    let (samples, m_eff) = sampled_rows(n, m, seed);
    let n_cols = matrix.n_cols();
    let mut sums = alloc::vec![0.0f64; n_cols];
    let mut hits: Vec<(f64, usize)> = Vec::with_capacity(n);
    let mut misses: Vec<(f64, usize)> = Vec::with_capacity(n);

    for &i in &samples {
        hits.clear();
        misses.clear();
        for j in 0..n {
            if j == i {
                continue;
            }
            let d = manhattan(matrix, &params, i, j);
            if labels[j] == labels[i] {
                hits.push((d, j));
            } else {
                misses.push((d, j));
            }
        }
        sort_neighbors(&mut hits);
        sort_neighbors(&mut misses);
        let kh = k.min(hits.len());
        let km = k.min(misses.len());
        let row_i = matrix.row(i);
        for f in 0..n_cols {
            let hit_mean = if kh == 0 {
                0.0
            } else {
                hits[..kh]
                    .iter()
                    .map(|&(_, j)| diff_unchecked(f, row_i, matrix.row(j), &params))
                    .sum::<f64>()
                    / kh as f64
            };
            let miss_mean = if km == 0 {
                0.0
            } else {
                misses[..km]
                    .iter()
                    .map(|&(_, j)| diff_unchecked(f, row_i, matrix.row(j), &params))
                    .sum::<f64>()
                    / km as f64
            };
            sums[f] += miss_mean - hit_mean;
        }
    }

    let weights = sums.iter().map(|s| s / m_eff as f64).collect();
    Ok(FeatureWeights { weights, k, m, seed, warnings })
}

/// RReliefF: regression weighting over the `k` nearest neighbors of each
/// sampled instance, neighbor influence decaying exponentially with rank
/// (`exp(-(rank/20)^2)`, normalized to sum to 1 per instance).
pub fn rrelieff_weights(
    matrix: &FeatureMatrix,
    targets: &[f64],
    k: usize,
    m: SampleCount,
    seed: u64,
) -> Result<FeatureWeights, ReliefError> {
    if k == 0 {
        return Err(ReliefError::ZeroNeighbors);
    }
    let n = matrix.n_rows();
    if targets.len() != n {
        return Err(ReliefError::LabelLength { got: targets.len(), rows: n });
    }
    if n < k + 1 {
        return Err(ReliefError::InsufficientData { rows: n, needed: k + 1 });
    }
    if let Some(row) = targets.iter().position(|t| !t.is_finite()) {
        return Err(ReliefError::NonFiniteTarget { row });
    }
    let (tmin, tmax) = targets
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &t| (lo.min(t), hi.max(t)));
    let target_range = tmax - tmin;
    if target_range == 0.0 {
        return Err(ReliefError::ZeroTargetRange);
    }

    let params = NormalizationParams::fit(matrix).expect("matrix entries are finite");
    let (samples, m_eff) = sampled_rows(n, m, seed);
    let n_cols = matrix.n_cols();

    // Rank-decay kernel, shared by every instance (always exactly k
    // neighbors, since n >= k + 1).
    let mut kernel: Vec<f64> = (1..=k).map(|r| {
        let x = r as f64 / RANK_SIGMA;
        math::exp(-(x * x))
    }).collect();
    let kernel_sum: f64 = kernel.iter().sum();
    for w in &mut kernel {
        *w /= kernel_sum;
    }

    let mut n_dc = 0.0f64;
    let mut n_da = alloc::vec![0.0f64; n_cols];
    let mut n_dcda = alloc::vec![0.0f64; n_cols];
    let mut neighbors: Vec<(f64, usize)> = Vec::with_capacity(n);

    for &i in &samples {
        neighbors.clear();
        for j in 0..n {
            if j != i {
                neighbors.push((manhattan(matrix, &params, i, j), j));
            }
        }
        sort_neighbors(&mut neighbors);
        let row_i = matrix.row(i);
        for (r, &(_, j)) in neighbors[..k].iter().enumerate() {
            let w = kernel[r];
            let dt = math::abs(targets[i] - targets[j]) / target_range;
            let dt = if dt > 1.0 { 1.0 } else { dt };
            n_dc += dt * w;
            for f in 0..n_cols {
                let da = diff_unchecked(f, row_i, matrix.row(j), &params);
                n_da[f] += da * w;
                n_dcda[f] += dt * da * w;
            }
        }
    }

    let same_mass = m_eff as f64 - n_dc;
    let weights = (0..n_cols)
        .map(|f| {
            let hit_term = if n_dc == 0.0 { 0.0 } else { n_dcda[f] / n_dc };
            let miss_term = if same_mass == 0.0 { 0.0 } else { (n_da[f] - n_dcda[f]) / same_mass };
            hit_term - miss_term
        })
        .collect();
    Ok(FeatureWeights { weights, k, m, seed, warnings: Vec::new() })
}

/// Order features by descending weight; ties break toward the lower
/// column index.
pub fn rank_features(weights: &FeatureWeights) -> RankResult {
    let n = weights.weights.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        weights.weights[b].total_cmp(&weights.weights[a]).then(a.cmp(&b))
    });
    let mut ranks = alloc::vec![0usize; n];
    for (position, &feature) in order.iter().enumerate() {
        ranks[feature] = position + 1;
    }
    RankResult { order, ranks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn matrix(rows: &[Vec<f64>]) -> FeatureMatrix {
        FeatureMatrix::from_rows(rows, vec![0.0; rows.len()]).unwrap()
    }

    #[test]
    fn diff_is_range_normalized() {
        let m = matrix(&[vec![0.0, 2.0], vec![10.0, 4.0], vec![5.0, 3.0]]);
        let params = NormalizationParams::fit(&m).unwrap();
        // identical values
        assert_eq!(feature_diff(0, m.row(1), m.row(1), &params).unwrap(), 0.0);
        // column min vs max
        assert_eq!(feature_diff(0, m.row(0), m.row(1), &params).unwrap(), 1.0);
        // values 2 and 4 on range [0, 10] would be 0.2; here col 1 spans [2, 4]
        let wide = matrix(&[vec![0.0], vec![10.0], vec![2.0], vec![4.0]]);
        let params = NormalizationParams::fit(&wide).unwrap();
        assert_eq!(feature_diff(0, wide.row(2), wide.row(3), &params).unwrap(), 0.2);
        // bad index
        assert!(matches!(
            feature_diff(3, m.row(0), m.row(1), &params),
            Err(ReliefError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn hand_case_two_features() {
        // Four corners of the unit square, class = first feature. The
        // first feature separates the classes perfectly (weight 1), the
        // second is identical across each hit/miss pair (weight -1).
        let m = matrix(&[vec![0.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]]);
        let labels = [false, false, true, true];
        let w = relief_weights(&m, &labels, SampleCount::All, 0).unwrap();
        assert_eq!(w.weights, vec![1.0, -1.0]);
        assert!(w.warnings.is_empty());
    }

    #[test]
    fn constant_column_weighs_zero() {
        let m = matrix(&[vec![0.0, 7.0], vec![0.3, 7.0], vec![0.9, 7.0], vec![1.0, 7.0]]);
        let labels = [false, false, true, true];
        let w = relief_weights(&m, &labels, SampleCount::All, 0).unwrap();
        assert_eq!(w.weights[1], 0.0);
        let wf = relieff_weights(&m, &labels, 2, SampleCount::All, 0).unwrap();
        assert_eq!(wf.weights[1], 0.0);
        let wr = rrelieff_weights(&m, &[0.1, 0.4, 0.5, 0.9], 2, SampleCount::All, 0).unwrap();
        assert_eq!(wr.weights[1], 0.0);
    }

    #[test]
    fn independent_labels_give_small_weights() {
        // 60 rows of seeded noise, labels alternate independently of the
        // features; a large resampled pass averages the weights toward 0.
        let mut rng = rng::seeded(2024);
        let rows: Vec<Vec<f64>> =
            (0..60).map(|_| (0..4).map(|_| rng::unit(&mut rng)).collect()).collect();
        let labels: Vec<bool> = (0..60).map(|i| i % 2 == 0).collect();
        let m = matrix(&rows);
        let w = relief_weights(&m, &labels, SampleCount::Count(5000), 77).unwrap();
        for (f, weight) in w.weights.iter().enumerate() {
            assert!(weight.abs() < 0.1, "feature {f} weight {weight}");
        }
    }

    #[test]
    fn single_class_and_tiny_inputs_error() {
        let m = matrix(&[vec![0.0], vec![1.0]]);
        assert_eq!(
            relief_weights(&m, &[true, true], SampleCount::All, 0).unwrap_err(),
            ReliefError::SingleClass
        );
        let one = matrix(&[vec![0.0]]);
        assert_eq!(
            relief_weights(&one, &[true], SampleCount::All, 0).unwrap_err(),
            ReliefError::InsufficientData { rows: 1, needed: 2 }
        );
        assert_eq!(
            relief_weights(&m, &[true], SampleCount::All, 0).unwrap_err(),
            ReliefError::LabelLength { got: 1, rows: 2 }
        );
    }

    #[test]
    fn relieff_k1_equals_relief() {
        let mut rng = rng::seeded(5);
        let rows: Vec<Vec<f64>> =
            (0..15).map(|_| (0..3).map(|_| rng::unit(&mut rng)).collect()).collect();
        let labels: Vec<bool> = (0..15).map(|i| i % 3 == 0).collect();
        let m = matrix(&rows);
        let a = relief_weights(&m, &labels, SampleCount::All, 9).unwrap();
        let b = relieff_weights(&m, &labels, 1, SampleCount::All, 9).unwrap();
        assert_eq!(a.weights, b.weights);
    }

    #[test]
    fn separating_feature_dominates_relieff() {
        // 20 rows; feature 0 separates the classes with a wide margin,
        // features 1-2 are noise.
        let mut rng = rng::seeded(31);
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..20 {
            let class = i % 2 == 0;
            let base = if class { 0.8 } else { 0.2 };
            rows.push(vec![
                base + 0.1 * rng::unit(&mut rng),
                rng::unit(&mut rng),
                rng::unit(&mut rng),
            ]);
            labels.push(class);
        }
        let m = matrix(&rows);
        let w = relieff_weights(&m, &labels, 3, SampleCount::All, 0).unwrap();
        assert!(w.weights[0] > w.weights[1] && w.weights[0] > w.weights[2], "{:?}", w.weights);
    }

    #[test]
    fn oversized_k_clamps_with_warning() {
        let mut rng = rng::seeded(8);
        let rows: Vec<Vec<f64>> =
            (0..10).map(|_| (0..2).map(|_| rng::unit(&mut rng)).collect()).collect();
        let labels: Vec<bool> = (0..10).map(|i| i < 5).collect();
        let m = matrix(&rows);
        let w = relieff_weights(&m, &labels, 50, SampleCount::All, 0).unwrap();
        assert_eq!(w.warnings.len(), 1);
        assert!(w.warnings[0].contains("4 hit(s)"), "{}", w.warnings[0]);
        assert!(w.weights.iter().all(|v| v.is_finite()));
    }

    #[test]
    fn rrelieff_copied_feature_wins() {
        // Target is an exact copy of feature 1; every other feature is
        // seeded noise.
        let mut rng = rng::seeded(1234);
        let rows: Vec<Vec<f64>> =
            (0..40).map(|_| (0..4).map(|_| rng::unit(&mut rng)).collect()).collect();
        let targets: Vec<f64> = rows.iter().map(|r| r[1]).collect();
        let m = matrix(&rows);
        let w = rrelieff_weights(&m, &targets, 10, SampleCount::All, 0).unwrap();
        for f in [0usize, 2, 3] {
            assert!(w.weights[1] > w.weights[f], "{:?}", w.weights);
        }
    }

    #[test]
    fn rrelieff_noise_target_weights_near_zero() {
        let mut rng = rng::seeded(4242);
        let rows: Vec<Vec<f64>> =
            (0..120).map(|_| (0..5).map(|_| rng::unit(&mut rng)).collect()).collect();
        let targets: Vec<f64> = (0..120).map(|_| rng::unit(&mut rng)).collect();
        let m = matrix(&rows);
        let w = rrelieff_weights(&m, &targets, 10, SampleCount::Count(2000), 99).unwrap();
        for (f, weight) in w.weights.iter().enumerate() {
            assert!(weight.abs() < 0.05, "feature {f} weight {weight}");
        }
    }

    #[test]
    fn rrelieff_degenerate_inputs_error() {
        let m = matrix(&[vec![0.0], vec![0.5], vec![1.0]]);
        assert_eq!(
            rrelieff_weights(&m, &[2.0, 2.0, 2.0], 1, SampleCount::All, 0).unwrap_err(),
            ReliefError::ZeroTargetRange
        );
        assert_eq!(
            rrelieff_weights(&m, &[0.0, 1.0, 2.0], 3, SampleCount::All, 0).unwrap_err(),
            ReliefError::InsufficientData { rows: 3, needed: 4 }
        );
    }

    #[test]
    fn weights_bounded_for_all_variants() {
        let mut rng = rng::seeded(64);
        for round in 0..10u64 {
            let n = 5 + (round as usize % 12);
            let rows: Vec<Vec<f64>> =
                (0..n).map(|_| (0..4).map(|_| rng::unit(&mut rng)).collect()).collect();
            let labels: Vec<bool> = (0..n).map(|i| i % 2 == 0).collect();
            let targets: Vec<f64> = (0..n).map(|_| rng::unit(&mut rng)).collect();
            let m = matrix(&rows);
            let checks = [
                relief_weights(&m, &labels, SampleCount::All, round).unwrap(),
                relieff_weights(&m, &labels, 3, SampleCount::All, round).unwrap(),
                rrelieff_weights(&m, &targets, 3, SampleCount::All, round).unwrap(),
            ];
            for w in checks {
                for v in &w.weights {
                    assert!((-1.0..=1.0).contains(v), "{v}");
                }
            }
        }
    }

    #[test]
    fn ranks_follow_descending_weights() {
        let sorted = FeatureWeights {
            weights: vec![0.9, 0.5, 0.1],
            k: 1,
            m: SampleCount::All,
            seed: 0,
            warnings: vec![],
        };
        assert_eq!(rank_features(&sorted).order, vec![0, 1, 2]);

        let tied = FeatureWeights { weights: vec![0.2, 0.5, 0.5, -0.1], ..sorted.clone() };
        let rank = rank_features(&tied);
        assert_eq!(rank.order, vec![1, 2, 0, 3]);
        assert_eq!(rank.ranks, vec![3, 1, 2, 4]);
    }

    #[test]
    fn sample_count_serde_round_trip() {
        let all = serde_json::to_string(&SampleCount::All).unwrap();
        assert_eq!(all, "\"all\"");
        assert_eq!(serde_json::from_str::<SampleCount>(&all).unwrap(), SampleCount::All);
        let n = serde_json::to_string(&SampleCount::Count(250)).unwrap();
        assert_eq!(n, "250");
        assert_eq!(serde_json::from_str::<SampleCount>(&n).unwrap(), SampleCount::Count(250));
    }

    #[test]
    fn matches_exhaustive_oracles_on_seeded_datasets() {
        // Full-pass runs against the independent brute-force
        // implementations, across assorted shapes and k values.
        let mut rng = rng::seeded(0xbeef);
        for trial in 0..15u64 {
            let n = 6 + (trial as usize * 3) % 18;
            let n_cols = 2 + (trial as usize % 5);
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..n_cols).map(|_| rng::uniform(&mut rng, -3.0, 8.0)).collect())
                .collect();
            let labels: Vec<bool> = (0..n).map(|i| (i * 7 + 3) % 5 < 2).collect();
            let targets: Vec<f64> = (0..n).map(|_| rng::uniform(&mut rng, 1.0, 9.0)).collect();
            let m = matrix(&rows);
            let k = 1 + (trial as usize % 4);

            let got = relief_weights(&m, &labels, SampleCount::All, 0).unwrap();
            let want = crate::oracle::relief_brute(&rows, &labels);
            for (g, w) in got.weights.iter().zip(&want) {
                assert!((g - w).abs() < 1e-12, "relief trial {trial}: {g} vs {w}");
            }

            let got = relieff_weights(&m, &labels, k, SampleCount::All, 0).unwrap();
            let want = crate::oracle::relieff_brute(&rows, &labels, k);
            for (g, w) in got.weights.iter().zip(&want) {
                assert!((g - w).abs() < 1e-12, "relieff trial {trial} k={k}: {g} vs {w}");
            }

            let got = rrelieff_weights(&m, &targets, k, SampleCount::All, 0).unwrap();
            let want = crate::oracle::rrelieff_brute(&rows, &targets, k);
            for (g, w) in got.weights.iter().zip(&want) {
                assert!((g - w).abs() < 1e-12, "rrelieff trial {trial} k={k}: {g} vs {w}");
            }
        }
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let mut rng = rng::seeded(500);
        let rows: Vec<Vec<f64>> =
            (0..30).map(|_| (0..4).map(|_| rng::unit(&mut rng)).collect()).collect();
        let targets: Vec<f64> = (0..30).map(|_| rng::unit(&mut rng)).collect();
        let m = matrix(&rows);
        let a = rrelieff_weights(&m, &targets, 5, SampleCount::Count(100), 7).unwrap();
        let b = rrelieff_weights(&m, &targets, 5, SampleCount::Count(100), 7).unwrap();
        assert_eq!(a.weights, b.weights);
    }
}
