//! Immanants of matrices and of generalized principal submatrices.

mod kernel;
mod matrix;

pub use kernel::{
    class_sums, determinant, immanant, immanant_with, immanants_all_shapes, permanent,
    KernelStrategy, PARALLEL_CHUNK,
};
pub use matrix::Matrix;

use crate::combinatorics::{MultisetIndex, Partition};
use crate::error::{check_size, Error, Result};
use crate::scalar::Scalar;

/// `A_I`: the `m x m` matrix with entries `a_{i_r, i_s}`; rows and columns
/// repeat with the multiplicities of `I`.
pub fn generalized_submatrix<S: Scalar>(a: &Matrix<S>, multiset: &MultisetIndex) -> Result<Matrix<S>> {
    let idx: Vec<usize> = multiset
        .indices()
        .iter()
        .map(|&i| {
            if i == 0 || i > a.n() {
                Err(Error::IndexOutOfRange {
                    index: i,
                    bound: a.n(),
                })
            } else {
                Ok(i - 1)
            }
        })
        .collect::<Result<_>>()?;
    Ok(a.select(&idx, &idx))
}

/// `Imm_lambda(A_I)` (not divided by `m(I)`).
pub fn immanant_of_submatrix<S: Scalar>(
    a: &Matrix<S>,
    lambda: &Partition,
    multiset: &MultisetIndex,
) -> Result<S> {
    check_size("immanant of submatrix", multiset.len(), lambda.size())?;
    immanant(&generalized_submatrix(a, multiset)?, lambda)
}
