//! Per-row and per-row-pair statistics over off-diagonal slots.
//!
//! For row `i` the off-diagonal slots are all tails `(i_2, ..., i_m)` other than
//! `(i, ..., i)`. Pair statistics for `(i, j)` additionally drop the slot
//! `(i, ..., i)` from row `j`.

use serde::{Deserialize, Serialize};

use crate::error::TensorError;
use crate::tensor::Tensor;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RowProfile {
    pub index: usize,
    pub diag: f64,
    /// Off-diagonal absolute row sum.
    pub r: f64,
    /// `max(0, off-diagonal entries)`.
    pub beta: f64,
    /// `min(0, off-diagonal entries)`.
    pub gamma: f64,
    /// `sum(beta - a)` over off-diagonal slots.
    pub delta: f64,
    /// `sum(a - gamma)` over off-diagonal slots.
    pub theta: f64,
    /// `beta` when the diagonal is positive, `gamma` when it is negative. A zero
    /// diagonal leaves this undefined; we store `beta`, and every predicate that
    /// needs `|diag| > |alpha|` then fails on that row.
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairProfile {
    pub i: usize,
    pub j: usize,
    /// `a_{j i ... i}`.
    pub a_ji: f64,
    pub r_j_i: f64,
    pub delta_j_i: f64,
    pub theta_j_i: f64,
}

fn offdiag(t: &Tensor, i: usize) -> impl Iterator<Item = f64> + '_ {
    let off = t.diag_offset(i);
    t.row(i)
        .iter()
        .enumerate()
        .filter(move |&(k, _)| k != off)
        .map(|(_, &v)| v)
}

fn one_row(t: &Tensor, i: usize) -> RowProfile {
    let diag = t.diag(i);
    let (mut r, mut beta, mut gamma) = (0.0_f64, 0.0_f64, 0.0_f64);
    for v in offdiag(t, i) {
        r += v.abs();
        beta = beta.max(v);
        gamma = gamma.min(v);
    }
    let (mut delta, mut theta) = (0.0, 0.0);
    for v in offdiag(t, i) {
        delta += beta - v;
        theta += v - gamma;
    }
    let alpha = if diag < 0.0 { gamma } else { beta };
    RowProfile {
        index: i,
        diag,
        r,
        beta,
        gamma,
        delta,
        theta,
        alpha,
    }
}

/// One [`RowProfile`] per row, in index order.
pub fn row_profile(t: &Tensor) -> Vec<RowProfile> {
    (0..t.dim()).map(|i| one_row(t, i)).collect()
}

/// Statistics of row `j` with the slots `(j, ..., j)` and `(i, ..., i)` removed.
pub fn pair_profile(t: &Tensor, i: usize, j: usize) -> Result<PairProfile, TensorError> {
    let n = t.dim();
    for k in [i, j] {
        if k >= n {
            return Err(TensorError::IndexOutOfRange { index: k, dim: n });
        }
    }
    if i == j {
        return Err(TensorError::SameIndex(i));
    }
    let row = one_row(t, j);
    let skip_i = t.diag_offset(i);
    let skip_j = t.diag_offset(j);
    let (mut r_j_i, mut delta_j_i, mut theta_j_i) = (0.0, 0.0, 0.0);
    for (k, &v) in t.row(j).iter().enumerate() {
        if k == skip_i || k == skip_j {
            continue;
        }
        r_j_i += v.abs();
        delta_j_i += row.beta - v;
        theta_j_i += v - row.gamma;
    }
    Ok(PairProfile {
        i,
        j,
        a_ji: t.row(j)[skip_i],
        r_j_i,
        delta_j_i,
        theta_j_i,
    })
}

/// All ordered pair profiles `(i, j)`, `i != j`, lexicographic.
pub fn all_pair_profiles(t: &Tensor) -> Vec<PairProfile> {
    let n = t.dim();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1));
    for i in 0..n {
        for j in 0..n {
            if i != j {
                out.push(pair_profile(t, i, j).expect("indices in range"));
            }
        }
    }
    out
}
