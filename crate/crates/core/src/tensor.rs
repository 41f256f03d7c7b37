//! Dense real tensors of order `m` and dimension `n`.
//!
//! Entries are stored row-major over the multi-index `(i_1, ..., i_m)`,
//! last index fastest. All indices in this crate are 0-based; the file
//! format used by the command-line tool is 1-based.
//!
//! The first index selects a "row": the slab of `n^(m-1)` entries
//! `a_{i, i_2, ..., i_m}`. Its diagonal slot is `(i, ..., i)`; every other
//! slot is off-diagonal.

use serde::{Deserialize, Serialize};

use crate::error::TensorError;

/// Default cap on `n^m`.
pub const DEFAULT_MAX_ENTRIES: usize = 100_000_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tensor {
    order: usize,
    dim: usize,
    data: Vec<f64>,
}

/// Number of entries `n^m` under `limit`, or the guard error.
fn checked_len(order: usize, dim: usize, limit: usize) -> Result<usize, TensorError> {
    if order == 0 || dim == 0 {
        return Err(TensorError::EmptyShape { order, dim });
    }
    let mut len: u128 = 1;
    for _ in 0..order {
        len = len.saturating_mul(dim as u128);
        if len > limit as u128 {
            return Err(TensorError::TooLarge {
                requested: (dim as u128).saturating_pow(order.min(u32::MAX as usize) as u32),
                limit,
            });
        }
    }
    Ok(len as usize)
}

impl Tensor {
    /// Builds a tensor from row-major entries under the default size guard.
    pub fn new(order: usize, dim: usize, data: Vec<f64>) -> Result<Self, TensorError> {
        Self::with_guard(order, dim, data, DEFAULT_MAX_ENTRIES)
    }

    pub fn with_guard(
        order: usize,
        dim: usize,
        data: Vec<f64>,
        max_entries: usize,
    ) -> Result<Self, TensorError> {
        let len = checked_len(order, dim, max_entries)?;
        if data.len() != len {
            return Err(TensorError::LengthMismatch {
                expected: len,
                got: data.len(),
            });
        }
        if let Some((index, &value)) = data.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(TensorError::NonFinite { index, value });
        }
        Ok(Self { order, dim, data })
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self, TensorError> {
        let len = checked_len(order, dim, DEFAULT_MAX_ENTRIES)?;
        Ok(Self {
            order,
            dim,
            data: vec![0.0; len],
        })
    }

    /// Builds a tensor by evaluating `f` at every multi-index.
    pub fn from_fn(
        order: usize,
        dim: usize,
        mut f: impl FnMut(&[usize]) -> f64,
    ) -> Result<Self, TensorError> {
        let mut t = Self::zeros(order, dim)?;
        let mut idx = vec![0; order];
        for lin in 0..t.data.len() {
            t.decode_into(lin, &mut idx);
            t.data[lin] = f(&idx);
        }
        if let Some((index, &value)) = t.data.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(TensorError::NonFinite { index, value });
        }
        Ok(t)
    }

    /// The identity tensor: 1 where all indices agree, 0 elsewhere.
    pub fn identity(order: usize, dim: usize) -> Result<Self, TensorError> {
        let mut t = Self::zeros(order, dim)?;
        for i in 0..dim {
            let lin = t.diag_linear(i);
            t.data[lin] = 1.0;
        }
        Ok(t)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[f64] {
        &self.data
    }

    pub fn into_entries(self) -> Vec<f64> {
        self.data
    }

    /// Length of one row slab, `n^(m-1)`.
    pub fn row_len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let len = self.row_len();
        &self.data[i * len..(i + 1) * len]
    }

    fn row_mut(&mut self, i: usize) -> &mut [f64] {
        let len = self.row_len();
        &mut self.data[i * len..(i + 1) * len]
    }

    /// Offset of the tail `(i, ..., i)` inside a row slab.
    pub fn diag_offset(&self, i: usize) -> usize {
        // i * (1 + n + ... + n^(m-2))
        let mut acc = 0;
        for _ in 1..self.order {
            acc = acc * self.dim + i;
        }
        acc
    }

    fn diag_linear(&self, i: usize) -> usize {
        i * self.row_len() + self.diag_offset(i)
    }

    /// The diagonal entry `a_{i...i}`.
    pub fn diag(&self, i: usize) -> f64 {
        self.data[self.diag_linear(i)]
    }

    /// `a_{j i ... i}`: the entry of row `j` at tail `(i, ..., i)`.
    pub fn row_at_diag_of(&self, j: usize, i: usize) -> f64 {
        self.row(j)[self.diag_offset(i)]
    }

    pub fn linear_index(&self, idx: &[usize]) -> Result<usize, TensorError> {
        if idx.len() != self.order {
            return Err(TensorError::LengthMismatch {
                expected: self.order,
                got: idx.len(),
            });
        }
        let mut lin = 0;
        for &k in idx {
            if k >= self.dim {
                return Err(TensorError::IndexOutOfRange {
                    index: k,
                    dim: self.dim,
                });
            }
            lin = lin * self.dim + k;
        }
        Ok(lin)
    }

    pub fn get(&self, idx: &[usize]) -> Result<f64, TensorError> {
        Ok(self.data[self.linear_index(idx)?])
    }

    pub fn set(&mut self, idx: &[usize], value: f64) -> Result<(), TensorError> {
        if !value.is_finite() {
            return Err(TensorError::NonFinite {
                index: self.linear_index(idx)?,
                value,
            });
        }
        let lin = self.linear_index(idx)?;
        self.data[lin] = value;
        Ok(())
    }

    /// Writes the multi-index of linear position `lin` into `out`.
    pub fn decode_into(&self, mut lin: usize, out: &mut [usize]) {
        for slot in out.iter_mut().rev() {
            *slot = lin % self.dim;
            lin /= self.dim;
        }
    }

    fn check_vec(&self, x: &[f64]) -> Result<(), TensorError> {
        if x.len() != self.dim {
            return Err(TensorError::VectorLength {
                dim: self.dim,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// `A x^(m-1)`: component `i` is the sum over tails of
    /// `a_{i i_2...i_m} x_{i_2} ... x_{i_m}`.
    pub fn apply_power(&self, x: &[f64]) -> Result<Vec<f64>, TensorError> {
        self.check_vec(x)?;
        // contract the trailing index m-1 times
        let n = self.dim;
        let mut cur = self.data.clone();
        for _ in 1..self.order {
            cur = cur
                .chunks_exact(n)
                .map(|c| c.iter().zip(x).map(|(a, b)| a * b).sum())
                .collect();
        }
        Ok(cur)
    }

    /// `A x^m`, the associated homogeneous form.
    pub fn poly_value(&self, x: &[f64]) -> Result<f64, TensorError> {
        let y = self.apply_power(x)?;
        Ok(y.iter().zip(x).map(|(a, b)| a * b).sum())
    }

    /// The `(m-1)`-order tensor `a^{(k)}_{i_1...i_{m-1}} = a_{k i_1...i_{m-1}}`.
    pub fn row_tensor(&self, k: usize) -> Result<Tensor, TensorError> {
        if self.order < 2 {
            return Err(TensorError::OrderTooSmall);
        }
        self.check_index(k)?;
        Ok(Tensor {
            order: self.order - 1,
            dim: self.dim,
            data: self.row(k).to_vec(),
        })
    }

    fn check_index(&self, k: usize) -> Result<(), TensorError> {
        if k >= self.dim {
            return Err(TensorError::IndexOutOfRange {
                index: k,
                dim: self.dim,
            });
        }
        Ok(())
    }

    fn map_rows(&self, mut f: impl FnMut(usize, &mut [f64])) -> Tensor {
        let mut out = self.clone();
        for i in 0..self.dim {
            f(i, out.row_mut(i));
        }
        out
    }

    /// `A-bar`: row `k` multiplied by `sign(a_{k...k})`, with `sign(0) = 0`.
    pub fn sign_normalize(&self) -> Tensor {
        self.map_rows(|i, row| {
            let d = self.diag(i);
            let s = if d > 0.0 {
                1.0
            } else if d < 0.0 {
                -1.0
            } else {
                0.0
            };
            for v in row.iter_mut() {
                *v *= s;
            }
        })
    }

    /// `A+`: every entry of row `i` shifted down by `beta_i(A)`.
    pub fn plus_transform(&self) -> Tensor {
        self.map_rows(|i, row| {
            let off = self.diag_offset(i);
            let beta = row
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != off)
                .fold(0.0_f64, |acc, (_, &v)| acc.max(v));
            for v in row.iter_mut() {
                *v -= beta;
            }
        })
    }

    /// `D B` for a diagonal sign matrix `D = diag(d)`; row `k` is scaled by `d_k`.
    pub fn scale_rows_by_signs(&self, d: &[f64]) -> Result<Tensor, TensorError> {
        self.check_vec(d)?;
        if let Some((index, &value)) = d.iter().enumerate().find(|(_, &v)| v != 1.0 && v != -1.0) {
            return Err(TensorError::BadSign { index, value });
        }
        Ok(self.map_rows(|i, row| {
            for v in row.iter_mut() {
                *v *= d[i];
            }
        }))
    }

    /// The principal subtensor over `alpha` (0-based, kept in the given order).
    pub fn principal_subtensor(&self, alpha: &[usize]) -> Result<Tensor, TensorError> {
        if alpha.is_empty() {
            return Err(TensorError::EmptySubset);
        }
        for (pos, &k) in alpha.iter().enumerate() {
            self.check_index(k)?;
            if alpha[..pos].contains(&k) {
                return Err(TensorError::DuplicateIndex(k));
            }
        }
        let r = alpha.len();
        let mut mapped = vec![0; self.order];
        Tensor::from_fn(self.order, r, |idx| {
            for (slot, &k) in mapped.iter_mut().zip(idx) {
                *slot = alpha[k];
            }
            let lin = mapped.iter().fold(0, |acc, &k| acc * self.dim + k);
            self.data[lin]
        })
    }

    /// Whether every entry equals the entry at every permutation of its index.
    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// First pair of linear indices `(lin, sorted_lin)` whose entries differ.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        let mut idx = vec![0; self.order];
        for lin in 0..self.data.len() {
            self.decode_into(lin, &mut idx);
            idx.sort_unstable();
            let sorted = idx.iter().fold(0, |acc, &k| acc * self.dim + k);
            if self.data[lin] != self.data[sorted] {
                return Some((lin, sorted));
            }
        }
        None
    }

    /// Z-tensor test: every off-diagonal entry is `<= 0`.
    ///
    /// `A = sI - D` with `D >= 0` holds for some `s` iff the off-diagonal part of
    /// `-A` is nonnegative; the diagonal is absorbed by `s = max_i a_{i...i}`.
    pub fn is_z_tensor(&self) -> bool {
        self.first_positive_offdiag().is_none()
    }

    /// First off-diagonal entry `> 0`, as `(row, tail offset, value)`.
    pub fn first_positive_offdiag(&self) -> Option<(usize, usize, f64)> {
        (0..self.dim).find_map(|i| {
            let off = self.diag_offset(i);
            self.row(i)
                .iter()
                .enumerate()
                .find(|&(k, &v)| k != off && v > 0.0)
                .map(|(k, &v)| (i, k, v))
        })
    }

    /// `c A`, entrywise.
    pub fn scaled(&self, c: f64) -> Tensor {
        Tensor {
            order: self.order,
            dim: self.dim,
            data: self.data.iter().map(|v| v * c).collect(),
        }
    }

    /// `A + s I`.
    pub fn shift_diagonal(&self, s: f64) -> Tensor {
        let mut out = self.clone();
        for i in 0..self.dim {
            let lin = out.diag_linear(i);
            out.data[lin] += s;
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    pub fn abs_sum(&self) -> f64 {
        self.data.iter().map(|v| v.abs()).sum()
    }
}

/// Componentwise `x_i^k`, with `0^0 = 1`.
pub fn hadamard_power(x: &[f64], k: u32) -> Vec<f64> {
    x.iter().map(|v| v.powi(k as i32)).collect()
}
