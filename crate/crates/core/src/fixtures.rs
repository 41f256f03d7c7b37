//! Small reference tensors with known classifications and spectra.

use crate::tensor::Tensor;

/// Order-4, dimension-2 symmetric tensor whose entries depend only on how
/// many indices point at the second coordinate.
fn quartic_by_count(values: [f64; 5]) -> Tensor {
    Tensor::from_fn(4, 2, |idx| values[idx.iter().filter(|&&k| k == 1).count()])
        .expect("fixed shape")
}

/// `a_1111 = 18`, `a_2222 = 20`, mixed entries 2, 2, 3. H-eigenvalues include 15 and 35.1469.
pub fn a1() -> Tensor {
    quartic_by_count([18.0, 2.0, 2.0, 3.0, 20.0])
}

/// `b_1111 = 2`, `b_2222 = 6`, mixed entries 5, -2, 4. H-eigenvalues include -20.2289 and 16.0666.
pub fn a2() -> Tensor {
    quartic_by_count([2.0, 5.0, -2.0, 4.0, 6.0])
}

/// The indefinite Z-matrix `[[-1, -1/2], [-1/2, -1]]`: DSDD and Q-DSDD, yet
/// neither double B nor quasi-double B.
pub fn counterexample() -> Tensor {
    Tensor::new(2, 2, vec![-1.0, -0.5, -0.5, -1.0]).expect("fixed shape")
}
