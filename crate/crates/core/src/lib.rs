//! Diagonal-dominance classes of real tensors, real H-eigenvalue inclusion
//! sets, and independent eigenvalue solvers to check them against.
//!
//! Indices are 0-based throughout the library.

pub mod classify;
pub mod error;
pub mod fixtures;
pub mod heig;
pub mod inclusion;
pub mod interval;
#[cfg(test)]
mod invariants;
pub mod profile;
pub mod tensor;

pub use error::{ClassifyError, HeigError, IntervalError, TensorError};
pub use interval::{Interval, IntervalSet};
pub use tensor::Tensor;
