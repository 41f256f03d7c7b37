//! JSON tensor files. Indices in files are 1-based.
//!
//! ```json
//! {"order": 2, "dim": 2, "format": "dense", "dense": [1, 2, 3, 4]}
//! {"order": 4, "dim": 2, "format": "coords", "symmetrize": true,
//!  "entries": [{"idx": [1, 1, 1, 1], "val": 18}]}
//! ```

use std::collections::HashMap;
use std::path::Path;

use bbar_core::tensor::DEFAULT_MAX_ENTRIES;
use bbar_core::Tensor;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Dense,
    Coords,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub idx: Vec<usize>,
    pub val: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorFile {
    pub order: usize,
    pub dim: usize,
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dense: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub symmetrize: bool,
}

impl TensorFile {
    pub fn to_tensor(&self) -> Result<Tensor, CliError> {
        match self.format {
            Format::Dense => {
                if self.entries.is_some() || self.symmetrize {
                    return Err(CliError::Input(
                        "dense files take neither `entries` nor `symmetrize`".into(),
                    ));
                }
                let data = self
                    .dense
                    .clone()
                    .ok_or_else(|| CliError::Input("dense file is missing `dense`".into()))?;
                Ok(Tensor::new(self.order, self.dim, data)?)
            }
            Format::Coords => {
                if self.dense.is_some() {
                    return Err(CliError::Input("coords file must not carry `dense`".into()));
                }
                let entries = self
                    .entries
                    .as_deref()
                    .ok_or_else(|| CliError::Input("coords file is missing `entries`".into()))?;
                self.coords_tensor(entries)
            }
        }
    }

    fn coords_tensor(&self, entries: &[Entry]) -> Result<Tensor, CliError> {
        let mut t = Tensor::zeros(self.order, self.dim)?;
        // linear position -> (value, entry number that set it)
        let mut written: HashMap<usize, (f64, usize)> = HashMap::new();
        for (k, e) in entries.iter().enumerate() {
            if e.idx.len() != self.order {
                return Err(CliError::Input(format!(
                    "entry {}: index {:?} has {} components, expected {}",
                    k + 1,
                    e.idx,
                    e.idx.len(),
                    self.order
                )));
            }
            if let Some(&bad) = e.idx.iter().find(|&&v| v == 0 || v > self.dim) {
                return Err(CliError::Input(format!(
                    "entry {}: index component {bad} is outside 1..={}",
                    k + 1,
                    self.dim
                )));
            }
            if !e.val.is_finite() {
                return Err(CliError::Input(format!(
                    "entry {}: value is not finite",
                    k + 1
                )));
            }
            let zero_based: Vec<usize> = e.idx.iter().map(|v| v - 1).collect();
            let targets = if self.symmetrize {
                permutations(&zero_based)
            } else {
                vec![zero_based]
            };
            for idx in targets {
                let lin = t.linear_index(&idx)?;
                match written.get(&lin) {
                    Some(&(prev, by)) if prev != e.val => {
                        return Err(CliError::Input(format!(
                            "entry {} sets {} to {} but entry {} already set it to {}",
                            k + 1,
                            one_based(&idx),
                            e.val,
                            by + 1,
                            prev
                        )));
                    }
                    Some(_) => {}
                    None => {
                        written.insert(lin, (e.val, k));
                        t.set(&idx, e.val)?;
                    }
                }
            }
        }
        Ok(t)
    }

    pub fn dense_from(t: &Tensor) -> Self {
        Self {
            order: t.order(),
            dim: t.dim(),
            format: Format::Dense,
            dense: Some(t.entries().to_vec()),
            entries: None,
            symmetrize: false,
        }
    }

    /// Every nonzero entry, written out in full (no symmetrization).
    pub fn coords_from(t: &Tensor) -> Self {
        let mut idx = vec![0; t.order()];
        let entries = t
            .entries()
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0.0)
            .map(|(lin, &val)| {
                t.decode_into(lin, &mut idx);
                Entry {
                    idx: idx.iter().map(|v| v + 1).collect(),
                    val,
                }
            })
            .collect();
        Self {
            order: t.order(),
            dim: t.dim(),
            format: Format::Coords,
            dense: None,
            entries: Some(entries),
            symmetrize: false,
        }
    }
}

fn one_based(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|v| (v + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

/// Distinct permutations of a multi-index, in lexicographic order.
fn permutations(idx: &[usize]) -> Vec<Vec<usize>> {
    let mut cur = idx.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // next lexicographic permutation
    loop {
        let Some(p) = (1..cur.len()).rev().find(|&k| cur[k - 1] < cur[k]) else {
            return out;
        };
        let q = (p..cur.len())
            .rev()
            .find(|&k| cur[k] > cur[p - 1])
            .expect("exists");
        cur.swap(p - 1, q);
        cur[p..].reverse();
        out.push(cur.clone());
    }
}

/// Rejects oversize shapes before any allocation.
fn check_shape(f: &TensorFile) -> Result<(), CliError> {
    let len = (f.dim as u128).checked_pow(f.order.min(u32::MAX as usize) as u32);
    match len {
        Some(l) if l <= DEFAULT_MAX_ENTRIES as u128 => Ok(()),
        _ => Err(CliError::Input(format!(
            "dim^order = {}^{} exceeds the limit of {DEFAULT_MAX_ENTRIES} entries",
            f.dim, f.order
        ))),
    }
}

pub fn parse(text: &str) -> Result<Tensor, CliError> {
    let f: TensorFile = serde_json::from_str(text)?;
    check_shape(&f)?;
    f.to_tensor()
}

pub fn load(path: &Path) -> Result<Tensor, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse(&text)
}

pub fn save(path: &Path, f: &TensorFile) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(f)?;
    std::fs::write(path, text + "\n")
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}
