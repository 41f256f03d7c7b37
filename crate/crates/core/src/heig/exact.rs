//! Complete real H-spectrum of a 2-dimensional tensor.
//!
//! Every eigenvector can be scaled so its larger component is 1, which gives
//! two charts on `[-1, 1]`:
//!
//! * `x = (s, 1)`: `P(s) = R_1(s) - s^(m-1) R_2(s)`, `lambda = R_2(s)`;
//! * `x = (1, t)`: `Q(t) = t^(m-1) S_1(t) - S_2(t)`, `lambda = S_1(t)`;
//!
//! where `R_i(s)` is component `i` of `A (s,1)^(m-1)` and `S_i(t)` that of
//! `A (1,t)^(m-1)`. Both charts are bounded, so no root bound is needed and
//! the points at infinity of one chart are interior points of the other.

use crate::error::HeigError;
use crate::tensor::Tensor;

use super::poly::Poly;
use super::{dedup_pairs, make_pair, HEigenpair};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactOptions {
    /// Relative tolerance for accepting a critical point as a tangent root.
    pub root_rel_tol: f64,
    /// Absolute tolerance on both `lambda` and canonical `x` when merging pairs.
    pub dedup_tol: f64,
    /// Candidates with residual above `residual_rel_tol * (1 + sum|a|)` are dropped.
    pub residual_rel_tol: f64,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self {
            root_rel_tol: 1e-11,
            dedup_tol: 1e-8,
            residual_rel_tol: 1e-8,
        }
    }
}

/// Row `i` of `A x^(m-1)` as a polynomial in the free chart coordinate.
/// `count_ones` selects the chart: the power is the number of tail indices
/// equal to 1 (chart `(1, t)`) or equal to 0 (chart `(s, 1)`).
fn row_poly(t: &Tensor, i: usize, count_ones: bool) -> Vec<f64> {
    let tail = t.order() - 1;
    let mut c = vec![0.0; tail + 1];
    for (k, &a) in t.row(i).iter().enumerate() {
        let ones = k.count_ones() as usize;
        let pow = if count_ones { ones } else { tail - ones };
        c[pow] += a;
    }
    c
}

/// `lhs - x^shift * rhs` as coefficient vectors.
fn sub_shifted(lhs: &[f64], rhs: &[f64], shift: usize) -> Vec<f64> {
    let mut out = vec![0.0; (lhs.len()).max(rhs.len() + shift)];
    for (k, &v) in lhs.iter().enumerate() {
        out[k] += v;
    }
    for (k, &v) in rhs.iter().enumerate() {
        out[k + shift] -= v;
    }
    out
}

pub fn heig_exact_n2(t: &Tensor, opts: &ExactOptions) -> Result<Vec<HEigenpair>, HeigError> {
    if t.dim() != 2 {
        return Err(HeigError::NeedsDimTwo(t.dim()));
    }
    if t.order() < 2 {
        return Err(HeigError::NeedsOrderTwo(t.order()));
    }
    let tail = t.order() - 1;
    let res_tol = opts.residual_rel_tol * (1.0 + t.abs_sum());

    let r1 = row_poly(t, 0, false);
    let r2 = row_poly(t, 1, false);
    let s1 = row_poly(t, 0, true);
    let s2 = row_poly(t, 1, true);
    let p = Poly::new(sub_shifted(&r1, &r2, tail));
    let q = Poly::new(sub_shifted(&s2, &s1, tail)); // sign flip is harmless for roots

    // P == 0 forces R_2 constant and R_1 = c s^(m-1): every x is an eigenvector.
    if p.is_zero() || q.is_zero() {
        let c = if p.is_zero() { r2[0] } else { s1[0] };
        return Ok([[1.0, 0.0], [0.0, 1.0]]
            .iter()
            .filter_map(|x| make_pair(t, c, x))
            .collect());
    }

    let r2p = Poly::new(r2);
    let s1p = Poly::new(s1);
    let mut pairs = Vec::new();
    for s in p.real_roots_in(-1.0, 1.0, opts.root_rel_tol) {
        pairs.extend(make_pair(t, r2p.eval(s), &[s, 1.0]));
    }
    for u in q.real_roots_in(-1.0, 1.0, opts.root_rel_tol) {
        pairs.extend(make_pair(t, s1p.eval(u), &[1.0, u]));
    }
    pairs.retain(|e| e.residual <= res_tol);
    pairs.sort_by(|a, b| {
        a.lambda
            .total_cmp(&b.lambda)
            .then_with(|| cmp_vec(&a.x, &b.x))
    });
    Ok(dedup_pairs(pairs, opts.dedup_tol))
}

fn cmp_vec(a: &[f64], b: &[f64]) -> std::cmp::Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.total_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{a1, a2, counterexample};
    use crate::heig::distinct_eigenvalues;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn eigs(t: &Tensor) -> Vec<HEigenpair> {
        heig_exact_n2(t, &ExactOptions::default()).unwrap()
    }

    fn has_near(vals: &[f64], want: f64, tol: f64) -> bool {
        vals.iter().any(|v| (v - want).abs() <= tol)
    }

    #[test]
    fn reference_eigenvalues() {
        let e = eigs(&a1());
        let vals: Vec<f64> = e.iter().map(|p| p.lambda).collect();
        assert!(has_near(&vals, 15.0, 1e-3), "{vals:?}");
        assert!(has_near(&vals, 35.1469, 1e-3), "{vals:?}");
        assert!(e.iter().all(|p| p.residual < 1e-9));

        let e = eigs(&a2());
        let vals: Vec<f64> = e.iter().map(|p| p.lambda).collect();
        assert!(has_near(&vals, -20.2289, 1e-3), "{vals:?}");
        assert!(has_near(&vals, 16.0666, 1e-3), "{vals:?}");
        assert!(e.iter().all(|p| p.residual < 1e-9));
    }

    #[test]
    fn identity_is_degenerate_but_reported() {
        let e = eigs(&Tensor::identity(4, 2).unwrap());
        assert_eq!(e.len(), 2);
        assert!(e.iter().all(|p| p.lambda == 1.0 && p.residual == 0.0));
    }

    #[test]
    fn counterexample_spectrum() {
        let vals = distinct_eigenvalues(&eigs(&counterexample()), 1e-8);
        assert_eq!(vals.len(), 2);
        assert_abs_diff_eq!(vals[0], -1.5, epsilon = 1e-10);
        assert_abs_diff_eq!(vals[1], -0.5, epsilon = 1e-10);
    }

    #[test]
    fn rejects_wrong_dimension() {
        let t = Tensor::identity(4, 3).unwrap();
        assert_eq!(
            heig_exact_n2(&t, &ExactOptions::default()),
            Err(HeigError::NeedsDimTwo(3))
        );
    }

    #[test]
    fn canonical_vectors() {
        for p in eigs(&a2()) {
            let norm = p.x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
            assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-15);
            assert!(*p.x.iter().find(|v| **v != 0.0).unwrap() > 0.0);
        }
    }

    proptest! {
        // closed-form eigenvalues of a real 2x2 matrix
        #[test]
        fn matrices_match_characteristic_polynomial(
            a in -5.0..5.0f64, b in -5.0..5.0f64, c in -5.0..5.0f64, d in -5.0..5.0f64,
        ) {
            let t = Tensor::new(2, 2, vec![a, b, c, d]).unwrap();
            let tr = a + d;
            let disc = (a - d) * (a - d) + 4.0 * b * c;
            let got = distinct_eigenvalues(&eigs(&t), 1e-8);
            if disc > 1e-6 {
                let sq = disc.sqrt();
                let want = [0.5 * (tr - sq), 0.5 * (tr + sq)];
                prop_assert_eq!(got.len(), 2, "{:?}", got);
                for (g, w) in got.iter().zip(want) {
                    prop_assert!((g - w).abs() < 1e-10, "{} vs {}", g, w);
                }
            } else if disc < -1e-6 {
                prop_assert!(got.is_empty(), "{:?}", got);
            }
        }

        #[test]
        fn every_pair_solves_the_equation(entries in prop::collection::vec(-3i32..=3, 16)) {
            let t = Tensor::new(4, 2, entries.into_iter().map(f64::from).collect()).unwrap();
            let tol = 1e-8 * (1.0 + t.abs_sum());
            for p in eigs(&t) {
                prop_assert!(p.residual <= tol);
            }
        }
    }
}
