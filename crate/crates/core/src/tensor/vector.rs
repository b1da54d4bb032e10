use std::ops::{Add, Sub};

use crate::combinatorics::WeakComposition;
use crate::error::{check_size, Error, Result};
use crate::immanant::Matrix;
use crate::scalar::Scalar;
use crate::symmetric_group::Permutation;

/// Largest tensor space the engine will allocate.
pub const MAX_TENSOR_DIM: usize = 100_000;

pub fn tensor_dim(n: usize, m: usize) -> Result<usize> {
    let dim = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if dim > MAX_TENSOR_DIM as u128 {
        return Err(Error::ResourceGuard(format!(
            "n^m = {n}^{m} exceeds {MAX_TENSOR_DIM} basis vectors"
        )));
    }
    Ok(dim as usize)
}

/// A multi-index `(j_1, ..., j_m)` with entries in `1..=n`, linearized as
/// `sum_k (j_k - 1) n^{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(indices: Vec<usize>, n: usize) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&j| j == 0 || j > n) {
            return Err(Error::IndexOutOfRange { index: bad, bound: n });
        }
        Ok(MultiIndex(indices))
    }

    pub fn from_position(pos: usize, n: usize, m: usize) -> Self {
        let mut rest = pos;
        MultiIndex(
            (0..m)
                .map(|_| {
                    let j = rest % n + 1;
                    rest /= n;
                    j
                })
                .collect(),
        )
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn position(&self, n: usize) -> usize {
        self.0.iter().rev().fold(0, |acc, &j| acc * n + (j - 1))
    }

    pub fn weight(&self, n: usize) -> WeakComposition {
        weight_of_indices(&self.0, n)
    }
}

fn weight_of_indices(j: &[usize], n: usize) -> WeakComposition {
    let mut mu = vec![0; n];
    for &x in j {
        mu[x - 1] += 1;
    }
    WeakComposition::new(mu)
}

pub fn weight_of(j: &MultiIndex, n: usize) -> WeakComposition {
    j.weight(n)
}

/// Positions (linear indices) of the basis vectors of weight `mu`, in
/// increasing order.
pub fn weight_block(n: usize, mu: &WeakComposition) -> Result<Vec<usize>> {
    check_size("weight length", n, mu.len())?;
    let m = mu.size();
    let dim = tensor_dim(n, m)?;
    let mut out = Vec::new();
    let mut digits = vec![0usize; m];
    let mut counts = vec![0usize; n];
    for pos in 0..dim {
        counts.iter_mut().for_each(|c| *c = 0);
        decode_into(pos, n, &mut digits);
        digits.iter().for_each(|&d| counts[d] += 1);
        if counts == mu.entries() {
            out.push(pos);
        }
    }
    Ok(out)
}

/// 0-based digits of `pos`, least significant first.
pub(crate) fn decode_into(mut pos: usize, n: usize, digits: &mut [usize]) {
    for d in digits.iter_mut() {
        *d = pos % n;
        pos /= n;
    }
}

pub(crate) fn encode(digits: &[usize], n: usize) -> usize {
    digits.iter().rev().fold(0, |acc, &d| acc * n + d)
}

/// A dense element of `(C^n)^{⊗m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorVector<S> {
    n: usize,
    m: usize,
    data: Vec<S>,
}

impl<S: Scalar> TensorVector<S> {
    pub fn zeros(n: usize, m: usize) -> Self {
        let dim = tensor_dim(n, m).expect("tensor dimension within guard");
        TensorVector {
            n,
            m,
            data: vec![S::zero(); dim],
        }
    }

    pub fn basis(n: usize, index: &MultiIndex) -> Self {
        let mut v = Self::zeros(n, index.indices().len());
        v.data[index.position(n)] = S::one();
        v
    }

    pub fn basis_at(n: usize, m: usize, pos: usize) -> Self {
        let mut v = Self::zeros(n, m);
        v.data[pos] = S::one();
        v
    }

    /// `f` receives 1-based multi-indices.
    pub fn from_fn(n: usize, m: usize, mut f: impl FnMut(&[usize]) -> S) -> Self {
        let mut v = Self::zeros(n, m);
        let mut digits = vec![0; m];
        for pos in 0..v.data.len() {
            decode_into(pos, n, &mut digits);
            let one_based: Vec<usize> = digits.iter().map(|d| d + 1).collect();
            v.data[pos] = f(&one_based);
        }
        v
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn data(&self) -> &[S] {
        &self.data
    }

    pub fn at(&self, pos: usize) -> &S {
        &self.data[pos]
    }

    pub fn get(&self, index: &MultiIndex) -> &S {
        &self.data[index.position(self.n)]
    }

    fn same_space(&self, other: &Self) -> Result<()> {
        check_size("tensor n", self.n, other.n)?;
        check_size("tensor m", self.m, other.m)
    }

    /// `<v, w> = sum_J v_J conj(w_J)`, linear in the first argument.
    pub fn inner(&self, other: &Self) -> Result<S> {
        self.same_space(other)?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.conj()))
    }

    pub fn norm(&self) -> f64 {
        self.data.iter().map(|x| x.modulus().powi(2)).sum::<f64>().sqrt()
    }

    pub fn max_modulus(&self) -> f64 {
        self.data.iter().map(Scalar::modulus).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> TensorVector<T> {
        TensorVector {
            n: self.n,
            m: self.m,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.n == other.n
            && self.m == other.m
            && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b, tol))
    }

    pub(crate) fn add_at(&mut self, pos: usize, c: S) {
        if !c.is_zero() {
            self.data[pos] = self.data[pos].clone() + c;
        }
    }
}

impl<S: Scalar> Add for &TensorVector<S> {
    type Output = TensorVector<S>;
    fn add(self, rhs: Self) -> TensorVector<S> {
        self.same_space(rhs).expect("tensor spaces differ");
        TensorVector {
            n: self.n,
            m: self.m,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }
}

impl<S: Scalar> Sub for &TensorVector<S> {
    type Output = TensorVector<S>;
    fn sub(self, rhs: Self) -> TensorVector<S> {
        self.same_space(rhs).expect("tensor spaces differ");
        TensorVector {
            n: self.n,
            m: self.m,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        }
    }
}

/// `P_mu`: keeps the coordinates whose multi-index has weight `mu`.
pub fn apply_weight_projector<S: Scalar>(mu: &WeakComposition, v: &TensorVector<S>) -> Result<TensorVector<S>> {
    check_size("weight length", v.n, mu.len())?;
    check_size("weight size", v.m, mu.size())?;
    let mut out = TensorVector::zeros(v.n, v.m);
    let mut digits = vec![0; v.m];
    let mut counts = vec![0usize; v.n];
    for (pos, x) in v.data.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        decode_into(pos, v.n, &mut digits);
        counts.iter_mut().for_each(|c| *c = 0);
        digits.iter().for_each(|&d| counts[d] += 1);
        if counts == mu.entries() {
            out.data[pos] = x.clone();
        }
    }
    Ok(out)
}

/// `A^{⊗m} v` by `m` successive mode contractions (cost `m n^{m+1}`).
pub fn apply_tensor_power<S: Scalar>(a: &Matrix<S>, v: &TensorVector<S>) -> Result<TensorVector<S>> {
    check_size("tensor power", v.n, a.n())?;
    let n = v.n;
    let mut current = v.data.clone();
    let mut stride = 1;
    for _ in 0..v.m {
        let mut next = vec![S::zero(); current.len()];
        for (pos, x) in current.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let digit = (pos / stride) % n;
            let base = pos - digit * stride;
            for row in 0..n {
                let coeff = &a[(row, digit)];
                if !coeff.is_zero() {
                    let slot = &mut next[base + row * stride];
                    *slot = slot.clone() + coeff.clone() * x.clone();
                }
            }
        }
        current = next;
        stride *= n;
    }
    Ok(TensorVector {
        n,
        m: v.m,
        data: current,
    })
}

/// Left place-permutation action: the factor in position `k` moves to
/// position `sigma(k)`, so `(sigma v)_J = v_{J ∘ sigma}` and
/// `(sigma tau) v = sigma (tau v)`.
pub fn apply_permutation<S: Scalar>(sigma: &Permutation, v: &TensorVector<S>) -> Result<TensorVector<S>> {
    check_size("permutation degree", v.m, sigma.degree())?;
    let mut out = TensorVector::zeros(v.n, v.m);
    let mut digits = vec![0; v.m];
    let mut moved = vec![0; v.m];
    for (pos, x) in v.data.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        decode_into(pos, v.n, &mut digits);
        for (k, &d) in digits.iter().enumerate() {
            moved[sigma.apply(k)] = d;
        }
        out.data[encode(&moved, v.n)] = x.clone();
    }
    Ok(out)
}

/// Derivation action of the matrix unit `E_ij` (1-based):
/// `sum_k 1 ⊗ ... ⊗ E_ij ⊗ ... ⊗ 1`.
pub fn apply_gl_generator<S: Scalar>(i: usize, j: usize, v: &TensorVector<S>) -> Result<TensorVector<S>> {
    for idx in [i, j] {
        if idx == 0 || idx > v.n {
            return Err(Error::IndexOutOfRange { index: idx, bound: v.n });
        }
    }
    let (to, from) = (i - 1, j - 1);
    let mut out = TensorVector::zeros(v.n, v.m);
    let mut stride = 1;
    for _ in 0..v.m {
        for (pos, x) in v.data.iter().enumerate() {
            if !x.is_zero() && (pos / stride) % v.n == from {
                let target = pos + to * stride - from * stride;
                out.add_at(target, x.clone());
            }
        }
        stride *= v.n;
    }
    Ok(out)
}

/// An element acting on tensors together with its adjoint: a permutation
/// (`sigma^* = sigma^{-1}`) or a matrix (`A^*` = conjugate transpose).
#[derive(Clone, Debug)]
pub enum Adjointable<S> {
    Permutation(Permutation),
    Matrix(Matrix<S>),
}

impl<S: Scalar> Adjointable<S> {
    pub fn act(&self, v: &TensorVector<S>) -> Result<TensorVector<S>> {
        match self {
            Self::Permutation(s) => apply_permutation(s, v),
            Self::Matrix(a) => apply_tensor_power(a, v),
        }
    }

    pub fn adjoint(&self) -> Self {
        match self {
            Self::Permutation(s) => Self::Permutation(s.inverse()),
            Self::Matrix(a) => Self::Matrix(a.conj_transpose()),
        }
    }
}

/// `<x v, w> = <v, x^* w>`: exact equality in exact modes, within `tol`
/// otherwise.
pub fn check_contravariance<S: Scalar>(
    x: &Adjointable<S>,
    v: &TensorVector<S>,
    w: &TensorVector<S>,
    tol: f64,
) -> Result<bool> {
    let lhs = x.act(v)?.inner(w)?;
    let rhs = v.inner(&x.adjoint().act(w)?)?;
    Ok(lhs.approx_eq(&rhs, tol))
}
