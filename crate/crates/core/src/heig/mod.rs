//! H-eigenpairs: real `lambda`, real `x != 0` with `A x^(m-1) = lambda x^[m-1]`.
//!
//! Two independent solvers are provided. [`heig_exact_n2`] finds every real
//! eigenpair of a 2-dimensional tensor by reducing the eigen-equation to a
//! univariate polynomial. [`sshopm`] is a shifted power iteration that works
//! in any dimension but only finds some of the eigenpairs.

mod exact;
pub mod poly;
mod sshopm;
mod verify;

use serde::{Deserialize, Serialize};

use crate::tensor::{hadamard_power, Tensor};

pub use exact::{heig_exact_n2, ExactOptions};
pub use sshopm::{sshopm, sshopm_both_ends, Shift, SshopmOptions};
pub use verify::{verify_containment, ContainmentReport, ContainmentRow, NamedSet};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HEigenpair {
    pub lambda: f64,
    /// Max-norm 1, first nonzero component positive.
    pub x: Vec<f64>,
    /// `max_i |(A x^(m-1))_i - lambda x_i^(m-1)|`.
    pub residual: f64,
}

/// Scales `x` to max-norm 1 with its first nonzero component positive.
/// Returns `None` for the zero vector.
pub fn canonicalize(x: &[f64]) -> Option<Vec<f64>> {
    let norm = x.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
    if norm == 0.0 || !norm.is_finite() {
        return None;
    }
    let first = *x.iter().find(|&&v| v != 0.0)?;
    let s = if first > 0.0 { 1.0 / norm } else { -1.0 / norm };
    Some(x.iter().map(|v| v * s).collect())
}

/// Max-norm residual of the eigen-equation at `(lambda, x)`.
pub fn residual(t: &Tensor, lambda: f64, x: &[f64]) -> f64 {
    let ax = t.apply_power(x).expect("length checked by caller");
    let xp = hadamard_power(x, (t.order() - 1) as u32);
    ax.iter()
        .zip(&xp)
        .fold(0.0_f64, |acc, (a, b)| acc.max((a - lambda * b).abs()))
}

/// Builds a canonical pair from any nonzero representative.
pub(crate) fn make_pair(t: &Tensor, lambda: f64, x: &[f64]) -> Option<HEigenpair> {
    let x = canonicalize(x)?;
    let residual = residual(t, lambda, &x);
    Some(HEigenpair {
        lambda,
        x,
        residual,
    })
}

/// Drops pairs whose eigenvalue and canonical vector both lie within `tol`
/// of an earlier pair. Order of first occurrence is kept.
pub fn dedup_pairs(pairs: Vec<HEigenpair>, tol: f64) -> Vec<HEigenpair> {
    let mut out: Vec<HEigenpair> = Vec::with_capacity(pairs.len());
    for p in pairs {
        let dup = out.iter().any(|q| {
            (q.lambda - p.lambda).abs() <= tol
                && q.x.iter().zip(&p.x).all(|(a, b)| (a - b).abs() <= tol)
        });
        if !dup {
            out.push(p);
        }
    }
    out
}

/// Distinct eigenvalues (within `tol`), ascending.
pub fn distinct_eigenvalues(pairs: &[HEigenpair], tol: f64) -> Vec<f64> {
    let mut vals: Vec<f64> = pairs.iter().map(|p| p.lambda).collect();
    vals.sort_by(|a, b| a.total_cmp(b));
    vals.dedup_by(|a, b| (*a - *b).abs() <= tol);
    vals
}
