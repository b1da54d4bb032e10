//! Schur-Weyl basis vectors and the two evaluations of the weight-space trace
//! `tr (P_mu ⊗ 1) A (P_mu) |_{U^lambda}`, which equals
//! `Imm_lambda(A_I) / m(I)` for `I` the multiset of weight `mu`.
//!
//! The exact route traces `P_mu A^{⊗m} P_mu z_lambda` over the whole tensor
//! space. Since `(C^n)^{⊗m}` is multiplicity free as a `GL_n x S_m`-module,
//! the `lambda`-isotypic block is `U^lambda ⊗ V^lambda` and tracing the
//! `S_m` factor contributes `f_lambda = dim V^lambda`, which is divided out.

use serde::Serialize;

use super::operator::{apply_group_algebra, TensorOperator};
use super::vector::{apply_tensor_power, MultiIndex, TensorVector};
use crate::combinatorics::{
    hook_data, multiset_from_weight, theta_mu, Partition, StandardTableau, ThetaImage, WeakComposition,
};
use crate::error::{check_size, Error, Result};
use crate::immanant::Matrix;
use crate::scalar::{FloatScalar, Rational, Scalar};
use crate::symmetric_group::{central_idempotent, primitive_idempotent, primitive_idempotents};

fn check_shapes(n: usize, lambda: &Partition, mu: &WeakComposition) -> Result<()> {
    check_size("weight length", n, mu.len())?;
    check_size("weight size", lambda.size(), mu.size())
}

/// `e_I = e_{i_1} ⊗ ... ⊗ e_{i_m}` for the nondecreasing multiset of `mu`.
pub fn weight_basis_vector<S: Scalar>(mu: &WeakComposition) -> TensorVector<S> {
    let n = mu.len();
    let index = MultiIndex::new(multiset_from_weight(mu).indices().to_vec(), n)
        .expect("multiset entries lie in 1..=n");
    TensorVector::basis(n, &index)
}

/// `E_T` acting on tensors.
pub fn idempotent_operator<F: FloatScalar>(t: &StandardTableau) -> TensorOperator<F> {
    TensorOperator::GroupAlgebra(primitive_idempotent(t))
}

/// `sqrt(h_lambda / m(I)) E_T e_I`.
pub fn schur_weyl_vector<F: FloatScalar>(t: &StandardTableau, mu: &WeakComposition) -> Result<TensorVector<F>> {
    check_size("weight size", t.size(), mu.size())?;
    let e = weight_basis_vector::<F>(mu);
    let v = apply_group_algebra(&primitive_idempotent(t), &e)?;
    Ok(v.scale(&F::from_f64(normalization(t.shape(), mu))))
}

fn normalization(lambda: &Partition, mu: &WeakComposition) -> f64 {
    let h = hook_data(lambda).hook_product as f64;
    let m_of_i = multiset_from_weight(mu).m_of_i() as f64;
    (h / m_of_i).sqrt()
}

#[derive(Clone, Debug, Serialize)]
pub struct SchurWeylNorm {
    pub tableau: StandardTableau,
    pub theta: ThetaImage,
    pub norm: f64,
}

/// `||sqrt(h/m(I)) E_T e_I||` for every standard `T` of shape `lambda`.
pub fn schur_weyl_norms(lambda: &Partition, mu: &WeakComposition) -> Result<Vec<SchurWeylNorm>> {
    check_size("weight size", lambda.size(), mu.size())?;
    let e = weight_basis_vector::<f64>(mu);
    let scale = normalization(lambda, mu);
    primitive_idempotents::<f64>(lambda)
        .into_iter()
        .map(|(t, x)| {
            let v = apply_group_algebra(&x, &e)?;
            Ok(SchurWeylNorm {
                theta: theta_mu(&t, mu)?,
                tableau: t,
                norm: v.norm() * scale,
            })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceTerm<F> {
    pub tableau: StandardTableau,
    pub theta_semistandard: bool,
    /// `(h_lambda / m(I)) <A^{⊗m} E_T e_I, E_T e_I>`.
    pub value: F,
}

pub fn trace_formula_terms<F: FloatScalar>(
    a: &Matrix<F>,
    lambda: &Partition,
    mu: &WeakComposition,
) -> Result<Vec<TraceTerm<F>>> {
    check_shapes(a.n(), lambda, mu)?;
    let e = weight_basis_vector::<F>(mu);
    let scale = F::from_f64(normalization(lambda, mu).powi(2));
    primitive_idempotents::<F>(lambda)
        .into_iter()
        .map(|(t, x)| {
            let u = apply_group_algebra(&x, &e)?;
            let value = apply_tensor_power(a, &u)?.inner(&u)? * scale.clone();
            Ok(TraceTerm {
                theta_semistandard: theta_mu(&t, mu)?.is_semistandard,
                tableau: t,
                value,
            })
        })
        .collect()
}

/// `(1/m(I)) sum_T h_lambda <A^{⊗m} E_T e_I, E_T e_I>` in Young's orthogonal
/// form.
pub fn trace_formula_rhs_orthogonal<F: FloatScalar>(
    a: &Matrix<F>,
    lambda: &Partition,
    mu: &WeakComposition,
) -> Result<F> {
    Ok(trace_formula_terms(a, lambda, mu)?
        .into_iter()
        .fold(F::zero(), |acc, t| acc + t.value))
}

fn inverse_dimension<S: Scalar>(lambda: &Partition) -> S {
    S::from_rational(&Rational::new(1.into(), hook_data(lambda).dimension.into()))
}

/// `(1/f_lambda) tr(P_mu A^{⊗m} P_mu z_lambda)`, exact.
pub fn trace_formula_rhs_exact<S: Scalar>(a: &Matrix<S>, lambda: &Partition, mu: &WeakComposition) -> Result<S> {
    if !S::EXACT {
        return Err(Error::InexactScalar);
    }
    check_shapes(a.n(), lambda, mu)?;
    // z_lambda commutes with P_mu, so the inner projector is redundant.
    let op = TensorOperator::Compose(vec![
        TensorOperator::WeightProjector(mu.clone()),
        TensorOperator::TensorPower(a.clone()),
        TensorOperator::GroupAlgebra(central_idempotent(lambda)),
    ]);
    Ok(op.trace_on_block(a.n(), mu)? * inverse_dimension(lambda))
}

/// `(1/f_lambda) tr(A^{⊗m} z_lambda)` over the whole tensor space, which is the
/// sum of [`trace_formula_rhs_exact`] over all weights.
pub fn full_trace_exact<S: Scalar>(a: &Matrix<S>, lambda: &Partition) -> Result<S> {
    if !S::EXACT {
        return Err(Error::InexactScalar);
    }
    let op = TensorOperator::Compose(vec![
        TensorOperator::TensorPower(a.clone()),
        TensorOperator::GroupAlgebra(central_idempotent(lambda)),
    ]);
    Ok(op.trace(a.n(), lambda.size())? * inverse_dimension(lambda))
}
