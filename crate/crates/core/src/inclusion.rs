//! Eigenvalue inclusion sets on the real line.
//!
//! * `gerschgorin`: union of `[a_ii - r_i, a_ii + r_i]`.
//! * `brauer_real`: real section of the Brauer-type (Cassini-oval) set.
//! * `double_b_bar_set`: intervals derived from the double B-bar class.
//! * `quasi_double_b_bar_set`: the finer quasi-double B-bar intervals.
//! * `upsilon`: intersection of the Brauer and quasi-double sets.
//!
//! The last three are stated for even-order symmetric tensors. They are total
//! functions on any tensor, but only carry a guarantee under that condition.

use serde::{Deserialize, Serialize};

use crate::interval::{solve_abs_affine_product, Interval, IntervalSet};
use crate::profile::{pair_profile, row_profile, RowProfile};
use crate::tensor::Tensor;

/// Right endpoint used for the open per-row interval of the double B-bar set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TildeMode {
    /// `a_ii - gamma_i + Theta_i`, the endpoint the containment argument needs.
    #[default]
    Corrected,
    /// `a_ii - gamma_i - Theta_i`, kept for comparison; it can exclude true eigenvalues.
    Literal,
}

/// Whether the double/quasi-double B-bar sets come with a containment guarantee.
pub fn has_guarantee(t: &Tensor) -> bool {
    t.order().is_multiple_of(2) && t.is_symmetric()
}

pub fn gerschgorin(t: &Tensor) -> IntervalSet {
    IntervalSet::from_options(
        row_profile(t)
            .iter()
            .map(|r| Interval::closed(r.diag - r.r, r.diag + r.r)),
    )
}

/// `{x : |x - a_ii| (|x - a_jj| - r_j^i) <= r_i |a_ji...i|}` over ordered pairs.
/// With a single row this falls back to the Gerschgorin interval.
pub fn brauer_real(t: &Tensor) -> IntervalSet {
    let n = t.dim();
    if n == 1 {
        return gerschgorin(t);
    }
    let rows = row_profile(t);
    let reals = IntervalSet::reals();
    let mut parts = Vec::new();
    for (i, j) in ordered_pairs(n) {
        let p = pair_profile(t, i, j).expect("valid pair");
        let s = solve_abs_affine_product(
            rows[i].diag,
            rows[j].diag,
            p.r_j_i,
            rows[i].r * p.a_ji.abs(),
            &reals,
        );
        parts.push(s);
    }
    IntervalSet::union_all(&parts)
}

fn ordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
}

fn below(x: f64) -> IntervalSet {
    Interval::open(f64::NEG_INFINITY, x).map_or_else(IntervalSet::empty, IntervalSet::from)
}

fn above(x: f64) -> IntervalSet {
    Interval::open(x, f64::INFINITY).map_or_else(IntervalSet::empty, IntervalSet::from)
}

fn between(lo: f64, hi: f64) -> IntervalSet {
    Interval::open(lo, hi).map_or_else(IntervalSet::empty, IntervalSet::from)
}

/// `[a_ii - beta_i, a_ii - gamma_i]` for every row.
fn row_intervals(rows: &[RowProfile]) -> Vec<Interval> {
    rows.iter()
        .filter_map(|r| Interval::closed(r.diag - r.beta, r.diag - r.gamma))
        .collect()
}

pub fn double_b_bar_set(t: &Tensor, tilde: TildeMode) -> IntervalSet {
    let rows = row_profile(t);
    let mut parts = vec![IntervalSet::from_intervals(row_intervals(&rows))];

    parts.push(IntervalSet::from_options(rows.iter().map(|r| {
        let right = match tilde {
            TildeMode::Corrected => r.diag - r.gamma + r.theta,
            TildeMode::Literal => r.diag - r.gamma - r.theta,
        };
        Interval::open(r.diag - r.beta - r.delta, right)
    })));

    let n = t.dim();
    for i in 0..n {
        for j in i + 1..n {
            let (ri, rj) = (&rows[i], &rows[j]);
            let (lo, hi) = (ri.diag.min(rj.diag), ri.diag.max(rj.diag));
            parts.push(solve_abs_affine_product(
                ri.diag - ri.beta,
                rj.diag - rj.beta,
                0.0,
                ri.delta * rj.delta,
                &below(lo),
            ));
            // the middle piece pairs gamma with the larger diagonal's side
            let (small, large) = if ri.diag <= rj.diag {
                (ri, rj)
            } else {
                (rj, ri)
            };
            if small.diag < large.diag {
                parts.push(solve_abs_affine_product(
                    small.diag - small.gamma,
                    large.diag - large.beta,
                    0.0,
                    small.theta * large.delta,
                    &between(small.diag, large.diag),
                ));
            }
            parts.push(solve_abs_affine_product(
                ri.diag - ri.gamma,
                rj.diag - rj.gamma,
                0.0,
                ri.theta * rj.theta,
                &above(hi),
            ));
        }
    }
    IntervalSet::union_all(&parts)
}

pub fn quasi_double_b_bar_set(t: &Tensor) -> IntervalSet {
    let rows = row_profile(t);
    let mut parts = vec![IntervalSet::from_intervals(row_intervals(&rows))];
    for (i, j) in ordered_pairs(t.dim()) {
        let p = pair_profile(t, i, j).expect("valid pair");
        let (ri, rj) = (&rows[i], &rows[j]);
        let (lo, hi) = (ri.diag.min(rj.diag), ri.diag.max(rj.diag));

        parts.push(solve_abs_affine_product(
            ri.diag - ri.beta,
            rj.diag - rj.beta,
            p.delta_j_i,
            (rj.beta - p.a_ji) * ri.delta,
            &below(lo),
        ));
        if ri.diag < rj.diag {
            parts.push(solve_abs_affine_product(
                ri.diag - ri.gamma,
                rj.diag - rj.beta,
                p.delta_j_i,
                (rj.beta - p.a_ji) * ri.theta,
                &between(ri.diag, rj.diag),
            ));
        } else if ri.diag > rj.diag {
            parts.push(solve_abs_affine_product(
                ri.diag - ri.beta,
                rj.diag - rj.gamma,
                p.theta_j_i,
                (p.a_ji - rj.gamma) * ri.delta,
                &between(rj.diag, ri.diag),
            ));
        }
        parts.push(solve_abs_affine_product(
            ri.diag - ri.gamma,
            rj.diag - rj.gamma,
            p.theta_j_i,
            (p.a_ji - rj.gamma) * ri.theta,
            &above(hi),
        ));
    }
    IntervalSet::union_all(&parts)
}

pub fn upsilon(t: &Tensor) -> IntervalSet {
    brauer_real(t).intersect(&quasi_double_b_bar_set(t))
}

/// The five sets in a fixed order, named as on the command line.
pub fn all_sets(t: &Tensor, tilde: TildeMode) -> Vec<(&'static str, IntervalSet)> {
    let omega = brauer_real(t);
    let psi = quasi_double_b_bar_set(t);
    let ups = omega.intersect(&psi);
    vec![
        ("gersh", gerschgorin(t)),
        ("brauer", omega),
        ("double-b-bar", double_b_bar_set(t, tilde)),
        ("quasi-double-b-bar", psi),
        ("upsilon", ups),
    ]
}

/// Dilation radius used when checking eigenvalues against the B-bar sets.
pub fn containment_eps(t: &Tensor) -> f64 {
    1e-9 * (1.0 + t.max_abs())
}
