//! Membership tests for the diagonal-dominance-style tensor classes.
//!
//! Every predicate returns a [`Verdict`]; a failed verdict carries the first
//! violated inequality as a [`Violation`], scanning rows in index order and
//! pairs in lexicographic `(i, j)` order. For `n = 1` the pairwise conditions
//! are vacuous.

use serde::{Deserialize, Serialize};

use crate::error::ClassifyError;
use crate::inclusion::{self, TildeMode};
use crate::profile::{pair_profile, row_profile, RowProfile};
use crate::tensor::Tensor;

/// Which pairwise inequality defines a quasi-double B-tensor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuasiRule {
    /// `(a_ii - b_i)(a_jj - b_j - D_j^i) > (b_j - a_ji) D_i`, the form the
    /// characterization and the interval construction rely on.
    #[default]
    Theorem,
    /// `(a_ii - b_i)(a_jj - b_j - D_j^i) > (b_i - a_ji) D_j`, as the
    /// definition is printed.
    Definition,
}

/// Route used for the sign-normalized (bar) classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BarRoute {
    /// Test the base class on `sign_normalize(A)`.
    ViaAbar,
    /// Test the equivalent conditions written with `alpha_i` on `A` itself.
    ViaAlpha,
}

/// A failed inequality `lhs <relation> rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub i: usize,
    pub j: Option<usize>,
    pub lhs: f64,
    pub relation: String,
    pub rhs: f64,
}

impl Violation {
    fn new(rule: &str, i: usize, j: Option<usize>, lhs: f64, relation: &str, rhs: f64) -> Self {
        Self {
            rule: rule.to_string(),
            i,
            j,
            lhs,
            relation: relation.to_string(),
            rhs,
        }
    }

    /// Re-evaluates the stored inequality; false for a genuine violation.
    pub fn inequality_holds(&self) -> bool {
        match self.relation.as_str() {
            ">" => self.lhs > self.rhs,
            ">=" => self.lhs >= self.rhs,
            "<=" => self.lhs <= self.rhs,
            "==" => self.lhs == self.rhs,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Violation>,
}

impl Verdict {
    fn yes() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    fn no(v: Violation) -> Self {
        Self {
            holds: false,
            witness: Some(v),
        }
    }
}

/// Early-return helper: `require!(cond, violation)`.
macro_rules! require {
    ($ok:expr, $v:expr) => {
        let ok: bool = $ok;
        if !ok {
            return Verdict::no($v);
        }
    };
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

fn ordered_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
}

fn offdiag<'a>(t: &'a Tensor, i: usize, skip: &'a [usize]) -> impl Iterator<Item = f64> + 'a {
    t.row(i)
        .iter()
        .enumerate()
        .filter(move |(k, _)| !skip.contains(k))
        .map(|(_, &v)| v)
}

fn diag_above_beta(rows: &[RowProfile], rule: &str) -> Option<Violation> {
    rows.iter()
        .find(|r| r.diag <= r.beta)
        .map(|r| Violation::new(rule, r.index, None, r.diag, ">", r.beta))
}

/// Double B-tensor: `a_ii > beta_i`, `a_ii - beta_i >= Delta_i`, and
/// `(a_ii - beta_i)(a_jj - beta_j) > Delta_i Delta_j` for `i != j`.
pub fn is_double_b(t: &Tensor) -> Verdict {
    let rows = row_profile(t);
    if let Some(v) = diag_above_beta(&rows, "double_b.diag") {
        return Verdict::no(v);
    }
    for r in &rows {
        let lhs = r.diag - r.beta;
        require!(
            lhs >= r.delta,
            Violation::new("double_b.a", r.index, None, lhs, ">=", r.delta)
        );
    }
    for (i, j) in ordered_pairs(t.dim()).filter(|(i, j)| i < j) {
        let (ri, rj) = (&rows[i], &rows[j]);
        let lhs = (ri.diag - ri.beta) * (rj.diag - rj.beta);
        let rhs = ri.delta * rj.delta;
        require!(
            lhs > rhs,
            Violation::new("double_b.b", i, Some(j), lhs, ">", rhs)
        );
    }
    Verdict::yes()
}

pub fn is_quasi_double_b(t: &Tensor, rule: QuasiRule) -> Verdict {
    let rows = row_profile(t);
    if let Some(v) = diag_above_beta(&rows, "quasi_double_b.diag") {
        return Verdict::no(v);
    }
    for (i, j) in ordered_pairs(t.dim()) {
        let p = pair_profile(t, i, j).expect("valid pair");
        let (ri, rj) = (&rows[i], &rows[j]);
        let lhs = (ri.diag - ri.beta) * (rj.diag - rj.beta - p.delta_j_i);
        let rhs = match rule {
            QuasiRule::Theorem => (rj.beta - p.a_ji) * ri.delta,
            QuasiRule::Definition => (ri.beta - p.a_ji) * rj.delta,
        };
        require!(
            lhs > rhs,
            Violation::new("quasi_double_b.pair", i, Some(j), lhs, ">", rhs)
        );
    }
    Verdict::yes()
}

/// `sum |alpha_i - a_{i...}|` over the off-diagonal slots of row `i`, also
/// skipping the tail `(skip, ..., skip)` when given.
fn alpha_gap(t: &Tensor, rows: &[RowProfile], i: usize, skip: Option<usize>) -> f64 {
    let alpha = rows[i].alpha;
    let mut slots = vec![t.diag_offset(i)];
    slots.extend(skip.map(|k| t.diag_offset(k)));
    offdiag(t, i, &slots).map(|a| (alpha - a).abs()).sum()
}

fn alpha_dominance(rows: &[RowProfile], rule: &str) -> Option<Violation> {
    rows.iter()
        .find(|r| r.diag.abs() <= r.alpha.abs())
        .map(|r| Violation::new(rule, r.index, None, r.diag.abs(), ">", r.alpha.abs()))
}

pub fn is_double_b_bar(t: &Tensor, route: BarRoute) -> Verdict {
    match route {
        BarRoute::ViaAbar => is_double_b(&t.sign_normalize()),
        BarRoute::ViaAlpha => double_b_bar_alpha(t),
    }
}

fn double_b_bar_alpha(t: &Tensor) -> Verdict {
    let rows = row_profile(t);
    if let Some(v) = alpha_dominance(&rows, "double_b_bar.alpha.a") {
        return Verdict::no(v);
    }
    let gaps: Vec<f64> = (0..t.dim()).map(|i| alpha_gap(t, &rows, i, None)).collect();
    for r in &rows {
        let lhs = (r.diag - r.alpha).abs();
        require!(
            lhs >= gaps[r.index],
            Violation::new(
                "double_b_bar.alpha.b",
                r.index,
                None,
                lhs,
                ">=",
                gaps[r.index]
            )
        );
    }
    for (i, j) in ordered_pairs(t.dim()).filter(|(i, j)| i < j) {
        let lhs = (rows[i].diag - rows[i].alpha).abs() * (rows[j].diag - rows[j].alpha).abs();
        let rhs = gaps[i] * gaps[j];
        require!(
            lhs > rhs,
            Violation::new("double_b_bar.alpha.c", i, Some(j), lhs, ">", rhs)
        );
    }
    Verdict::yes()
}

pub fn is_quasi_double_b_bar(t: &Tensor, route: BarRoute, rule: QuasiRule) -> Verdict {
    match route {
        BarRoute::ViaAbar => is_quasi_double_b(&t.sign_normalize(), rule),
        BarRoute::ViaAlpha => quasi_double_b_bar_alpha(t, rule),
    }
}

fn quasi_double_b_bar_alpha(t: &Tensor, rule: QuasiRule) -> Verdict {
    let rows = row_profile(t);
    if let Some(v) = alpha_dominance(&rows, "quasi_double_b_bar.alpha.diag") {
        return Verdict::no(v);
    }
    let gaps: Vec<f64> = (0..t.dim()).map(|i| alpha_gap(t, &rows, i, None)).collect();
    for (i, j) in ordered_pairs(t.dim()) {
        let (ri, rj) = (&rows[i], &rows[j]);
        let a_ji = t.row_at_diag_of(j, i);
        let lhs = (ri.diag - ri.alpha).abs()
            * ((rj.diag - rj.alpha).abs() - alpha_gap(t, &rows, j, Some(i)));
        let rhs = match rule {
            QuasiRule::Theorem => (rj.alpha - a_ji).abs() * gaps[i],
            // beta_i(A-bar) - abar_{ji...i}, written back in terms of A
            QuasiRule::Definition => (sign(ri.diag) * ri.alpha - sign(rj.diag) * a_ji) * gaps[j],
        };
        require!(
            lhs > rhs,
            Violation::new("quasi_double_b_bar.alpha.pair", i, Some(j), lhs, ">", rhs)
        );
    }
    Verdict::yes()
}

/// Doubly strictly diagonally dominant: `|a_ii||a_jj| > r_i r_j` for `i != j`
/// and, only when `m > 2`, `|a_ii| >= r_i`.
pub fn is_dsdd(t: &Tensor) -> Verdict {
    let rows = row_profile(t);
    for (i, j) in ordered_pairs(t.dim()).filter(|(i, j)| i < j) {
        let lhs = rows[i].diag.abs() * rows[j].diag.abs();
        let rhs = rows[i].r * rows[j].r;
        require!(
            lhs > rhs,
            Violation::new("dsdd.pair", i, Some(j), lhs, ">", rhs)
        );
    }
    if t.order() > 2 {
        for r in &rows {
            require!(
                r.diag.abs() >= r.r,
                Violation::new("dsdd.row", r.index, None, r.diag.abs(), ">=", r.r)
            );
        }
    }
    Verdict::yes()
}

/// Quasi-doubly strictly diagonally dominant:
/// `|a_ii| (|a_jj| - r_j^i) > r_i |a_ji...i|` for `i != j`.
pub fn is_qdsdd(t: &Tensor) -> Verdict {
    let rows = row_profile(t);
    for (i, j) in ordered_pairs(t.dim()) {
        let p = pair_profile(t, i, j).expect("valid pair");
        let lhs = rows[i].diag.abs() * (rows[j].diag.abs() - p.r_j_i);
        let rhs = rows[i].r * p.a_ji.abs();
        require!(
            lhs > rhs,
            Violation::new("qdsdd.pair", i, Some(j), lhs, ">", rhs)
        );
    }
    Verdict::yes()
}

pub fn z_tensor_verdict(t: &Tensor) -> Verdict {
    match t.first_positive_offdiag() {
        None => Verdict::yes(),
        Some((i, _, v)) => Verdict::no(Violation::new("z_tensor.offdiag", i, None, v, "<=", 0.0)),
    }
}

/// For asymmetry the witness indices are linear positions: `i` is the entry
/// and `j` the position of its sorted permutation.
pub fn symmetric_verdict(t: &Tensor) -> Verdict {
    match t.first_asymmetry() {
        None => Verdict::yes(),
        Some((lin, sorted)) => Verdict::no(Violation::new(
            "symmetric.permutation",
            lin,
            Some(sorted),
            t.entries()[lin],
            "==",
            t.entries()[sorted],
        )),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOptions {
    pub quasi_rule: QuasiRule,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub double_b: Verdict,
    pub quasi_double_b: Verdict,
    pub double_b_bar: Verdict,
    pub quasi_double_b_bar: Verdict,
    pub dsdd: Verdict,
    pub qdsdd: Verdict,
    pub z_tensor: Verdict,
    pub symmetric: Verdict,
}

impl ClassificationReport {
    /// `(name, verdict)` rows in a fixed order.
    pub fn rows(&self) -> [(&'static str, &Verdict); 8] {
        [
            ("double-b", &self.double_b),
            ("quasi-double-b", &self.quasi_double_b),
            ("double-b-bar", &self.double_b_bar),
            ("quasi-double-b-bar", &self.quasi_double_b_bar),
            ("dsdd", &self.dsdd),
            ("qdsdd", &self.qdsdd),
            ("z-tensor", &self.z_tensor),
            ("symmetric", &self.symmetric),
        ]
    }
}

/// Runs every predicate once. The bar classes are computed through both
/// routes and must agree; disagreement is reported as an error.
pub fn classify_all(
    t: &Tensor,
    opts: ClassifyOptions,
) -> Result<ClassificationReport, ClassifyError> {
    let rule = opts.quasi_rule;
    let db_abar = is_double_b_bar(t, BarRoute::ViaAbar);
    let db_alpha = is_double_b_bar(t, BarRoute::ViaAlpha);
    if db_abar.holds != db_alpha.holds {
        return Err(ClassifyError::RouteDisagreement {
            class: "double_b_bar",
            via_abar: db_abar.holds,
            via_alpha: db_alpha.holds,
        });
    }
    let qb_abar = is_quasi_double_b_bar(t, BarRoute::ViaAbar, rule);
    let qb_alpha = is_quasi_double_b_bar(t, BarRoute::ViaAlpha, rule);
    if qb_abar.holds != qb_alpha.holds {
        return Err(ClassifyError::RouteDisagreement {
            class: "quasi_double_b_bar",
            via_abar: qb_abar.holds,
            via_alpha: qb_alpha.holds,
        });
    }
    Ok(ClassificationReport {
        double_b: is_double_b(t),
        quasi_double_b: is_quasi_double_b(t, rule),
        double_b_bar: db_alpha,
        quasi_double_b_bar: qb_alpha,
        dsdd: is_dsdd(t),
        qdsdd: is_qdsdd(t),
        z_tensor: z_tensor_verdict(t),
        symmetric: symmetric_verdict(t),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PdVerdict {
    Certified,
    Unknown,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PdCertificate {
    pub verdict: PdVerdict,
    pub reason: String,
    /// Greatest lower hull endpoint over the computed inclusion sets.
    pub eigen_lower_bound: Option<f64>,
}

/// Sufficient-condition ladder for positive definiteness of an even-order
/// symmetric tensor. Sign-normalized classes never certify on their own:
/// flipping a row sign does not preserve definiteness.
pub fn certify_positive_definite(t: &Tensor) -> PdCertificate {
    if t.order() % 2 == 1 {
        return PdCertificate {
            verdict: PdVerdict::NotApplicable,
            reason: "odd order".into(),
            eigen_lower_bound: None,
        };
    }
    if !t.is_symmetric() {
        return PdCertificate {
            verdict: PdVerdict::NotApplicable,
            reason: "not symmetric".into(),
            eigen_lower_bound: None,
        };
    }

    let sets = inclusion::all_sets(t, TildeMode::Corrected);
    let lows: Vec<f64> = sets
        .iter()
        .map(|(_, s)| s.hull().map_or(f64::INFINITY, |h| h.lo))
        .collect();
    let lower_bound = lows.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let positive_diag = (0..t.dim()).all(|i| t.diag(i) > 0.0);
    let ladder: [(&str, bool); 5] = [
        ("double_b", is_double_b(t).holds),
        (
            "quasi_double_b",
            is_quasi_double_b(t, QuasiRule::Theorem).holds,
        ),
        ("dsdd_positive_diagonal", positive_diag && is_dsdd(t).holds),
        (
            "qdsdd_positive_diagonal",
            positive_diag && is_qdsdd(t).holds,
        ),
        ("inclusion_sets_positive", lows.iter().all(|&lo| lo > 0.0)),
    ];
    let (verdict, reason) = match ladder.iter().find(|(_, fired)| *fired) {
        Some((rule, _)) => (PdVerdict::Certified, rule.to_string()),
        None => (
            PdVerdict::Unknown,
            "no sufficient condition fired".to_string(),
        ),
    };
    PdCertificate {
        verdict,
        reason,
        eigen_lower_bound: lower_bound.is_finite().then_some(lower_bound),
    }
}
