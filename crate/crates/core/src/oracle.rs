//! Brute-force reference implementations for the test suites.
//!
//! Everything here is written independently of the production modules:
//! plain nested loops over `Vec<Vec<f64>>`, no shared helpers, so a bug
//! in the real code cannot hide in its own oracle. Enabled for tests and
//! behind the `oracles` feature for dependent crates' test suites.

use alloc::vec;
use alloc::vec::Vec;

use crate::math;

fn column_ranges(rows: &[Vec<f64>]) -> Vec<(f64, f64)> {
    let n_cols = rows[0].len();
    (0..n_cols)
        .map(|c| {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for row in rows {
                if row[c] < lo {
                    lo = row[c];
                }
                if row[c] > hi {
                    hi = row[c];
                }
            }
            (lo, hi)
        })
        .collect()
}

fn diff(ranges: &[(f64, f64)], c: usize, a: &[f64], b: &[f64]) -> f64 {
    let (lo, hi) = ranges[c];
    if hi == lo {
        0.0
    } else {
        let d = math::abs(a[c] - b[c]) / (hi - lo);
        d.min(1.0)
    }
}

fn distance(ranges: &[(f64, f64)], a: &[f64], b: &[f64]) -> f64 {
    (0..a.len()).map(|c| diff(ranges, c, a, b)).sum()
}

/// Neighbor indices of `i` within `pool`, nearest first, distance ties
/// broken by lower row index.
fn ordered_neighbors(
    rows: &[Vec<f64>],
    ranges: &[(f64, f64)],
    i: usize,
    pool: &[usize],
) -> Vec<usize> {
    let mut with_dist: Vec<(f64, usize)> =
        pool.iter().map(|&j| (distance(ranges, &rows[i], &rows[j]), j)).collect();
    with_dist.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    with_dist.into_iter().map(|(_, j)| j).collect()
}

/// Exhaustive binary Relief, every instance visited once in row order.
pub fn relief_brute(rows: &[Vec<f64>], labels: &[bool]) -> Vec<f64> {
    relieff_brute(rows, labels, 1)
}

/// Exhaustive ReliefF with `k` nearest hits/misses (clamped to
/// availability), every instance visited once in row order.
pub fn relieff_brute(rows: &[Vec<f64>], labels: &[bool], k: usize) -> Vec<f64> {
    let n = rows.len();
    let n_cols = rows[0].len();
    let ranges = column_ranges(rows);
    let m = n as f64;
    let mut w = vec![0.0f64; n_cols];
    for i in 0..n {
        let hit_pool: Vec<usize> =
            (0..n).filter(|&j| j != i && labels[j] == labels[i]).collect();
        let miss_pool: Vec<usize> =
            (0..n).filter(|&j| j != i && labels[j] != labels[i]).collect();
        let hits = ordered_neighbors(rows, &ranges, i, &hit_pool);
        let misses = ordered_neighbors(rows, &ranges, i, &miss_pool);
        let kh = k.min(hits.len());
        let km = k.min(misses.len());
        for c in 0..n_cols {
            if kh > 0 {
                let mut s = 0.0;
                for &j in &hits[..kh] {
                    s += diff(&ranges, c, &rows[i], &rows[j]);
                }
                w[c] -= s / kh as f64 / m;
            }
            if km > 0 {
                let mut s = 0.0;
                for &j in &misses[..km] {
                    s += diff(&ranges, c, &rows[i], &rows[j]);
                }
                w[c] += s / km as f64 / m;
            }
        }
    }
    w
}

/// Exhaustive regression ReliefF: rank-weighted accumulators over the
/// `k` nearest neighbors of every instance, visited once in row order.
pub fn rrelieff_brute(rows: &[Vec<f64>], targets: &[f64], k: usize) -> Vec<f64> {
    let n = rows.len();
    let n_cols = rows[0].len();
    let ranges = column_ranges(rows);
    let mut tlo = f64::INFINITY;
    let mut thi = f64::NEG_INFINITY;
    for &t in targets {
        tlo = tlo.min(t);
        thi = thi.max(t);
    }
    let trange = thi - tlo;

    let raw_kernel: Vec<f64> =
        (1..=k).map(|r| math::exp(-((r as f64 / 20.0) * (r as f64 / 20.0)))).collect();
    let kernel_total: f64 = raw_kernel.iter().sum();

    let mut n_dc = 0.0;
    let mut n_da = vec![0.0f64; n_cols];
    let mut n_dcda = vec![0.0f64; n_cols];
    for i in 0..n {
        let pool: Vec<usize> = (0..n).filter(|&j| j != i).collect();
        let neighbors = ordered_neighbors(rows, &ranges, i, &pool);
        for (rank0, &j) in neighbors[..k].iter().enumerate() {
            let influence = raw_kernel[rank0] / kernel_total;
            let dt = (math::abs(targets[i] - targets[j]) / trange).min(1.0);
            n_dc += dt * influence;
            for c in 0..n_cols {
                let da = diff(&ranges, c, &rows[i], &rows[j]);
                n_da[c] += da * influence;
                n_dcda[c] += dt * da * influence;
            }
        }
    }

    (0..n_cols)
        .map(|c| {
            let hit = if n_dc == 0.0 { 0.0 } else { n_dcda[c] / n_dc };
            let miss = if n as f64 - n_dc == 0.0 {
                0.0
            } else {
                (n_da[c] - n_dcda[c]) / (n as f64 - n_dc)
            };
            hit - miss
        })
        .collect()
}

/// Straight-line evaluation of the cascade-forward function from the
/// canonical flat parameter vector.
pub fn cascade_forward(n_in: usize, n_hidden: usize, params: &[f64], x: &[f64]) -> f64 {
    let w_ih = &params[..n_hidden * n_in];
    let b_h = &params[n_hidden * n_in..n_hidden * n_in + n_hidden];
    let w_ho = &params[n_hidden * n_in + n_hidden..n_hidden * n_in + 2 * n_hidden];
    let w_io = &params[n_hidden * n_in + 2 * n_hidden..n_hidden * n_in + 2 * n_hidden + n_in];
    let b_o = params[n_hidden * n_in + 2 * n_hidden + n_in];

    let mut y = b_o;
    for h in 0..n_hidden {
        let mut z = b_h[h];
        for i in 0..n_in {
            z += w_ih[h * n_in + i] * x[i];
        }
        y += w_ho[h] * math::tanh(z);
    }
    for i in 0..n_in {
        y += w_io[i] * x[i];
    }
    y
}

fn half_mean_sq_loss(
    n_in: usize,
    n_hidden: usize,
    params: &[f64],
    rows: &[Vec<f64>],
    targets: &[f64],
) -> f64 {
    let mut sse = 0.0;
    for (row, &t) in rows.iter().zip(targets) {
        let r = cascade_forward(n_in, n_hidden, params, row) - t;
        sse += r * r;
    }
    0.5 * sse / rows.len() as f64
}

/// Central finite differences of `1/2 * mean((y_hat - t)^2)` with respect
/// to every parameter, evaluated entirely through [`cascade_forward`].
pub fn fd_gradient(
    n_in: usize,
    n_hidden: usize,
    params: &[f64],
    rows: &[Vec<f64>],
    targets: &[f64],
    h: f64,
) -> Vec<f64> {
    (0..params.len())
        .map(|p| {
            let mut plus = params.to_vec();
            let mut minus = params.to_vec();
            plus[p] += h;
            minus[p] -= h;
            let lp = half_mean_sq_loss(n_in, n_hidden, &plus, rows, targets);
            let lm = half_mean_sq_loss(n_in, n_hidden, &minus, rows, targets);
            (lp - lm) / (2.0 * h)
        })
        .collect()
}
