use serde::Serialize;

use crate::inclusion::{all_sets, containment_eps, TildeMode};
use crate::interval::IntervalSet;
use crate::tensor::Tensor;

use super::HEigenpair;

/// An inclusion set to test against, with the dilation applied before testing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NamedSet {
    pub name: String,
    pub set: IntervalSet,
    pub eps: f64,
}

impl NamedSet {
    /// The five standard sets, each dilated by `containment_eps`. Computed
    /// eigenvalues carry rounding error, and eigenvalues lying exactly on a set
    /// endpoint do occur for integer tensors.
    pub fn standard(t: &Tensor, tilde: TildeMode) -> Vec<NamedSet> {
        Self::standard_with_eps(t, tilde, containment_eps(t))
    }

    pub fn standard_with_eps(t: &Tensor, tilde: TildeMode, eps: f64) -> Vec<NamedSet> {
        all_sets(t, tilde)
            .into_iter()
            .map(|(name, set)| NamedSet {
                name: name.to_string(),
                set,
                eps,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContainmentRow {
    pub lambda: f64,
    pub residual: f64,
    /// `(set name, contained)` in the order the sets were given.
    pub members: Vec<(String, bool)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Default)]
pub struct ContainmentReport {
    pub rows: Vec<ContainmentRow>,
    /// Number of `(eigenvalue, set)` pairs that failed.
    pub violations: usize,
}

impl ContainmentReport {
    pub fn all_contained(&self) -> bool {
        self.violations == 0
    }
}

pub fn verify_containment(pairs: &[HEigenpair], sets: &[NamedSet]) -> ContainmentReport {
    let dilated: Vec<IntervalSet> = sets
        .iter()
        .map(|s| {
            if s.eps > 0.0 {
                s.set.dilate(s.eps).expect("eps > 0")
            } else {
                s.set.clone()
            }
        })
        .collect();
    let mut report = ContainmentReport::default();
    for p in pairs {
        let members: Vec<(String, bool)> = sets
            .iter()
            .zip(&dilated)
            .map(|(s, d)| (s.name.clone(), d.contains(p.lambda)))
            .collect();
        report.violations += members.iter().filter(|(_, ok)| !ok).count();
        report.rows.push(ContainmentRow {
            lambda: p.lambda,
            residual: p.residual,
            members,
        });
    }
    report
}
