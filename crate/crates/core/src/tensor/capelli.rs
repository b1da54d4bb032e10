//! Capelli column determinants
//! `C_k(u) = sum_{sigma in S_k} sgn(sigma) (u+E)_{sigma(1),1} (u+E-1)_{sigma(2),2} ... (u+E-k+1)_{sigma(k),k}`
//! acting on tensors through the `gl_n` derivation action. Factors are
//! composed in the written order, so the column-`k` factor acts first.

use serde::Serialize;

use super::operator::TensorOperator;
use super::schur_weyl::schur_weyl_vector;
use super::vector::TensorVector;
use crate::combinatorics::{gt_from_ssyt, theta_mu, Partition, StandardTableau, WeakComposition};
use crate::error::{check_size, Error, Result};
use crate::scalar::Scalar;
use crate::symmetric_group::lex_permutations;

pub fn capelli_operator<S: Scalar>(k: usize, u: S, n: usize) -> Result<TensorOperator<S>> {
    if k == 0 || k > n {
        return Err(Error::IndexOutOfRange { index: k, bound: n });
    }
    let terms = lex_permutations(k)
        .map(|sigma| {
            let factors = (0..k)
                .map(|col| {
                    let shift = u.clone() - S::from_usize(col);
                    TensorOperator::shifted_generator(sigma.apply(col) + 1, col + 1, shift)
                })
                .collect();
            (S::from_i64(sigma.sign()), TensorOperator::Compose(factors))
        })
        .collect();
    Ok(TensorOperator::Sum(terms))
}

/// `prod_{j=1}^k (u + lambda_{kj} - j + 1)` for row `k` of a Gelfand-Tsetlin
/// pattern.
pub fn capelli_eigenvalue(row: &[usize], u: f64) -> f64 {
    row.iter()
        .enumerate()
        .map(|(j, &l)| u + l as f64 - j as f64)
        .product()
}

#[derive(Clone, Debug, Serialize)]
pub struct CapelliCheck {
    pub gt_row: Vec<usize>,
    pub expected: f64,
    /// `max_J |(C_k(u) v)_J - expected v_J|`.
    pub residual: f64,
    pub passed: bool,
}

/// Applies `C_k(u)` to the Schur-Weyl vector of `(T, mu)` and compares with
/// the eigenvalue read off row `k` of the pattern of `theta_mu(T)`.
pub fn verify_capelli(
    lambda: &Partition,
    mu: &WeakComposition,
    t: &StandardTableau,
    k: usize,
    u: f64,
    tol: f64,
) -> Result<CapelliCheck> {
    if t.shape() != lambda {
        return Err(Error::InvalidTableau(format!("tableau shape {} is not {lambda}", t.shape())));
    }
    check_size("weight size", lambda.size(), mu.size())?;
    let n = mu.len();
    let ssyt = theta_mu(t, mu)?
        .to_ssyt(n)
        .ok_or_else(|| Error::Hypothesis("theta_mu(T) is not semistandard".into()))?;
    let pattern = gt_from_ssyt(&ssyt, n)?;
    let op = capelli_operator(k, u, n)?;
    let v = schur_weyl_vector::<f64>(t, mu)?;
    let gt_row = pattern.row(k).to_vec();
    let expected = capelli_eigenvalue(&gt_row, u);
    let residual = (&op.apply(&v)? - &v.scale(&expected)).max_modulus();
    Ok(CapelliCheck {
        gt_row,
        expected,
        residual,
        passed: residual <= tol,
    })
}

/// The eigenvalue of `op` at `v`, or `None` if `op v` is not a multiple of
/// `v` within `tol` (or `v` vanishes).
pub fn eigenvalue_at(op: &TensorOperator<f64>, v: &TensorVector<f64>, tol: f64) -> Result<Option<f64>> {
    let Some((pivot, _)) = v
        .data()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .filter(|(_, x)| x.abs() > tol)
    else {
        return Ok(None);
    };
    let w = op.apply(v)?;
    let ratio = w.at(pivot) / v.at(pivot);
    let residual = (&w - &v.scale(&ratio)).max_modulus();
    Ok((residual <= tol).then_some(ratio))
}
