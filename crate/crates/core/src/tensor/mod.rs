//! The tensor space `(C^n)^{⊗m}` with its commuting `GL_n` and `S_m`
//! actions.

mod capelli;
mod operator;
mod schur_weyl;
mod vector;

pub use capelli::{capelli_eigenvalue, capelli_operator, eigenvalue_at, verify_capelli, CapelliCheck};
pub use operator::{apply_group_algebra, TensorOperator, MAX_DENSE_DIM};
pub use schur_weyl::{
    full_trace_exact, idempotent_operator, schur_weyl_norms, schur_weyl_vector, trace_formula_rhs_exact,
    trace_formula_rhs_orthogonal, trace_formula_terms, weight_basis_vector, SchurWeylNorm, TraceTerm,
};
pub use vector::{
    apply_gl_generator, apply_permutation, apply_tensor_power, apply_weight_projector, check_contravariance,
    tensor_dim, weight_block, weight_of, Adjointable, MultiIndex, TensorVector, MAX_TENSOR_DIM,
};

use crate::combinatorics::WeakComposition;

/// `P_mu` as an operator.
pub fn weight_projector<S>(mu: &WeakComposition) -> TensorOperator<S> {
    TensorOperator::WeightProjector(mu.clone())
}
