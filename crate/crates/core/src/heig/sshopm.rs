//! Shifted power iteration for H-eigenpairs of symmetric tensors.
//!
//! With a large enough positive shift the fixed points near the top of the
//! spectrum attract. Running on `-A` reaches the bottom. No completeness claim:
//! the only contract is that every reported pair meets the residual bound.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::HeigError;
use crate::tensor::{hadamard_power, Tensor};

use super::{dedup_pairs, make_pair, HEigenpair};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shift {
    /// `1 + sum |a|`.
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SshopmOptions {
    pub shift: Shift,
    pub starts: usize,
    pub seed: u64,
    /// Pairs are reported only when their residual is below this.
    pub tol: f64,
    pub max_iters: usize,
    pub dedup_tol: f64,
}

impl Default for SshopmOptions {
    fn default() -> Self {
        Self {
            shift: Shift::Auto,
            starts: 20,
            seed: 0,
            tol: 1e-10,
            max_iters: 20_000,
            dedup_tol: 1e-8,
        }
    }
}

fn m_normalize(x: &mut [f64], m: usize) -> bool {
    let norm = x
        .iter()
        .map(|v| v.abs().powi(m as i32))
        .sum::<f64>()
        .powf(1.0 / m as f64);
    if norm == 0.0 || !norm.is_finite() {
        return false;
    }
    x.iter_mut().for_each(|v| *v /= norm);
    true
}

fn signed_root(v: f64, k: usize) -> f64 {
    match k {
        1 => v,
        _ => v.signum() * v.abs().powf(1.0 / k as f64),
    }
}

/// Rayleigh-type quotient and residual scaled to a max-norm-1 vector.
fn quotient_and_residual(ax: &[f64], x: &[f64], m: usize) -> (f64, f64) {
    let xp = hadamard_power(x, (m - 1) as u32);
    let num: f64 = ax.iter().zip(&xp).map(|(a, b)| a * b).sum();
    let den: f64 = xp.iter().map(|b| b * b).sum();
    let lambda = num / den;
    let res = ax
        .iter()
        .zip(&xp)
        .fold(0.0_f64, |acc, (a, b)| acc.max((a - lambda * b).abs()));
    let scale = x
        .iter()
        .fold(0.0_f64, |acc, v| acc.max(v.abs()))
        .powi((m - 1) as i32);
    (lambda, res / scale)
}

fn run_one(t: &Tensor, shift: f64, mut x: Vec<f64>, opts: &SshopmOptions) -> Option<HEigenpair> {
    let m = t.order();
    if !m_normalize(&mut x, m) {
        return None;
    }
    for _ in 0..opts.max_iters {
        let ax = t.apply_power(&x).ok()?;
        let (_, res) = quotient_and_residual(&ax, &x, m);
        if res < 1e-2 * opts.tol {
            break;
        }
        let xp = hadamard_power(&x, (m - 1) as u32);
        let mut next: Vec<f64> = ax
            .iter()
            .zip(&xp)
            .map(|(a, b)| signed_root(a + shift * b, m - 1))
            .collect();
        if !m_normalize(&mut next, m) {
            return None;
        }
        let step = next
            .iter()
            .zip(&x)
            .fold(0.0_f64, |acc, (a, b)| acc.max((a - b).abs()));
        x = next;
        if step == 0.0 {
            break;
        }
    }
    let ax = t.apply_power(&x).ok()?;
    let (lambda, _) = quotient_and_residual(&ax, &x, m);
    make_pair(t, lambda, &x).filter(|p| p.residual < opts.tol)
}

/// Converged pairs in start order, deduplicated.
pub fn sshopm(t: &Tensor, opts: &SshopmOptions) -> Result<Vec<HEigenpair>, HeigError> {
    if !t.is_symmetric() {
        return Err(HeigError::NotSymmetric);
    }
    if opts.starts == 0 {
        return Err(HeigError::NoStarts);
    }
    let shift = match opts.shift {
        Shift::Auto => 1.0 + t.abs_sum(),
        Shift::Fixed(s) => s,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let n = t.dim();
    let pairs = (0..opts.starts)
        .filter_map(|_| {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            run_one(t, shift, x, opts)
        })
        .collect();
    Ok(dedup_pairs(pairs, opts.dedup_tol))
}

/// Runs on `A` and on `-A` so both ends of the spectrum are reached.
pub fn sshopm_both_ends(t: &Tensor, opts: &SshopmOptions) -> Result<Vec<HEigenpair>, HeigError> {
    let mut pairs = sshopm(t, opts)?;
    let neg = t.scaled(-1.0);
    pairs.extend(sshopm(&neg, opts)?.into_iter().map(|p| HEigenpair {
        lambda: -p.lambda,
        ..p
    }));
    Ok(dedup_pairs(pairs, opts.dedup_tol))
}
