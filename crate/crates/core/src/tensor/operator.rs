use rayon::prelude::*;

use super::vector::{
    apply_gl_generator, apply_permutation, apply_tensor_power, apply_weight_projector, decode_into,
    encode, tensor_dim, weight_block, TensorVector,
};
use crate::combinatorics::WeakComposition;
use crate::error::{check_size, Error, Result};
use crate::immanant::Matrix;
use crate::scalar::Scalar;
use crate::symmetric_group::{GroupAlgebraElement, Permutation};

/// Largest space on which [`TensorOperator::to_dense`] materializes a matrix.
pub const MAX_DENSE_DIM: usize = 256;

/// A linear map on `(C^n)^{⊗m}` held as an expression tree.
#[derive(Clone, Debug)]
pub enum TensorOperator<S> {
    Identity,
    WeightProjector(WeakComposition),
    TensorPower(Matrix<S>),
    Permutation(Permutation),
    /// `sum_sigma c_sigma sigma` through the place-permutation action.
    GroupAlgebra(GroupAlgebraElement<S>),
    /// `E_ij`, 1-based.
    GlGenerator(usize, usize),
    /// `sum_k c_k X_k`.
    Sum(Vec<(S, TensorOperator<S>)>),
    /// A written product `X_1 X_2 ... X_r`; `X_r` is applied first.
    Compose(Vec<TensorOperator<S>>),
}

impl<S: Scalar> TensorOperator<S> {
    pub fn scalar(c: S) -> Self {
        Self::Sum(vec![(c, Self::Identity)])
    }

    /// `c + E_ij`.
    pub fn shifted_generator(i: usize, j: usize, c: S) -> Self {
        if i == j {
            Self::Sum(vec![(S::one(), Self::GlGenerator(i, j)), (c, Self::Identity)])
        } else {
            Self::GlGenerator(i, j)
        }
    }

    pub fn apply(&self, v: &TensorVector<S>) -> Result<TensorVector<S>> {
        match self {
            Self::Identity => Ok(v.clone()),
            Self::WeightProjector(mu) => apply_weight_projector(mu, v),
            Self::TensorPower(a) => apply_tensor_power(a, v),
            Self::Permutation(sigma) => apply_permutation(sigma, v),
            Self::GroupAlgebra(x) => apply_group_algebra(x, v),
            Self::GlGenerator(i, j) => apply_gl_generator(*i, *j, v),
            Self::Sum(terms) => {
                let mut acc = TensorVector::zeros(v.n(), v.m());
                for (c, op) in terms {
                    if !c.is_zero() {
                        acc = &acc + &op.apply(v)?.scale(c);
                    }
                }
                Ok(acc)
            }
            Self::Compose(factors) => factors
                .iter()
                .rev()
                .try_fold(v.clone(), |acc, op| op.apply(&acc)),
        }
    }

    /// Columns are images of basis vectors; entry `[row][col]`.
    pub fn to_dense(&self, n: usize, m: usize) -> Result<Vec<Vec<S>>> {
        let dim = tensor_dim(n, m)?;
        if dim > MAX_DENSE_DIM {
            return Err(Error::ResourceGuard(format!(
                "dense operator needs n^m <= {MAX_DENSE_DIM}, got {dim}"
            )));
        }
        let mut out = vec![vec![S::zero(); dim]; dim];
        for col in 0..dim {
            let image = self.apply(&TensorVector::basis_at(n, m, col))?;
            for (row, x) in image.data().iter().enumerate() {
                out[row][col] = x.clone();
            }
        }
        Ok(out)
    }

    /// `tr(P_mu X P_mu) = sum_{J of weight mu} (X e_J)_J`. Basis vectors are
    /// processed in parallel and summed in increasing position order.
    pub fn trace_on_block(&self, n: usize, mu: &WeakComposition) -> Result<S> {
        let m = mu.size();
        let block = weight_block(n, mu)?;
        let diag: Vec<S> = block
            .par_iter()
            .map(|&pos| {
                self.apply(&TensorVector::basis_at(n, m, pos))
                    .map(|w| w.at(pos).clone())
            })
            .collect::<Result<_>>()?;
        Ok(diag.into_iter().fold(S::zero(), |acc, x| acc + x))
    }

    /// Trace over the whole tensor space.
    pub fn trace(&self, n: usize, m: usize) -> Result<S> {
        let dim = tensor_dim(n, m)?;
        let diag: Vec<S> = (0..dim)
            .into_par_iter()
            .map(|pos| {
                self.apply(&TensorVector::basis_at(n, m, pos))
                    .map(|w| w.at(pos).clone())
            })
            .collect::<Result<_>>()?;
        Ok(diag.into_iter().fold(S::zero(), |acc, x| acc + x))
    }
}

/// `sum_sigma c_sigma (sigma v)`, decoding each nonzero coordinate once.
pub fn apply_group_algebra<S: Scalar>(x: &GroupAlgebraElement<S>, v: &TensorVector<S>) -> Result<TensorVector<S>> {
    check_size("group algebra degree", v.m(), x.degree())?;
    let (n, m) = (v.n(), v.m());
    let mut out = TensorVector::zeros(n, m);
    let mut digits = vec![0; m];
    let mut moved = vec![0; m];
    for (pos, coeff) in v.data().iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        decode_into(pos, n, &mut digits);
        for (sigma, c) in x.terms() {
            for (k, &d) in digits.iter().enumerate() {
                moved[sigma.apply(k)] = d;
            }
            out.add_at(encode(&moved, n), c.clone() * coeff.clone());
        }
    }
    Ok(out)
}
