use std::collections::BTreeMap;
use std::ops::{Add, Mul};


use super::character::character_table;
use super::permutation::{lex_permutations, Permutation};
use super::young::YoungRepresentation;
use crate::combinatorics::{factorial, hook_data, Partition, StandardTableau};
use crate::scalar::{FloatScalar, Rational, Scalar};

/// A finitely supported element `sum_sigma c_sigma sigma` of the group
/// algebra of `S_m`. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupAlgebraElement<S> {
    degree: usize,
    terms: BTreeMap<Permutation, S>,
}

impl<S: Scalar> GroupAlgebraElement<S> {
    pub fn zero(m: usize) -> Self {
        GroupAlgebraElement {
            degree: m,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `delta_e`.
    pub fn identity(m: usize) -> Self {
        Self::from_terms(m, [(Permutation::identity(m), S::one())])
    }

    pub fn from_terms(m: usize, terms: impl IntoIterator<Item = (Permutation, S)>) -> Self {
        let mut out = Self::zero(m);
        for (sigma, c) in terms {
            assert_eq!(sigma.degree(), m, "permutation degree mismatch");
            out.accumulate(sigma, c);
        }
        out
    }

    fn accumulate(&mut self, sigma: Permutation, c: S) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(sigma);
        match slot {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, S> {
        &self.terms
    }

    pub fn coefficient(&self, sigma: &Permutation) -> S {
        self.terms.get(sigma).cloned().unwrap_or_else(S::zero)
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(
            self.degree,
            self.terms.iter().map(|(s, v)| (s.clone(), v.clone() * c.clone())),
        )
    }

    /// Coefficientwise comparison: exact in exact modes, within `tol` otherwise.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let zero = S::zero();
        self.terms
            .keys()
            .chain(other.terms.keys())
            .all(|s| {
                let a = self.terms.get(s).unwrap_or(&zero);
                let b = other.terms.get(s).unwrap_or(&zero);
                a.approx_eq(b, tol)
            })
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GroupAlgebraElement<T> {
        GroupAlgebraElement::from_terms(
            self.degree,
            self.terms.iter().map(|(s, v)| (s.clone(), f(v))),
        )
    }
}

impl<S: Scalar> Add for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;
    fn add(self, rhs: Self) -> GroupAlgebraElement<S> {
        assert_eq!(self.degree, rhs.degree);
        let mut out = self.clone();
        for (s, c) in &rhs.terms {
            out.accumulate(s.clone(), c.clone());
        }
        out
    }
}

/// Convolution: `(sum a_s s)(sum b_t t) = sum a_s b_t (s t)`.
impl<S: Scalar> Mul for &GroupAlgebraElement<S> {
    type Output = GroupAlgebraElement<S>;
    fn mul(self, rhs: Self) -> GroupAlgebraElement<S> {
        assert_eq!(self.degree, rhs.degree);
        let mut out = GroupAlgebraElement::zero(self.degree);
        for (s, a) in &self.terms {
            for (t, b) in &rhs.terms {
                out.accumulate(s.compose(t), a.clone() * b.clone());
            }
        }
        out
    }
}

/// `E_T = (1/h_lambda) sum_sigma <sigma^{-1} v_T, v_T> sigma` in Young's
/// orthogonal basis.
pub fn primitive_idempotent<F: FloatScalar>(t: &StandardTableau) -> GroupAlgebraElement<F> {
    let rep = YoungRepresentation::new(t.shape());
    let matrices = rep.all_matrices();
    let k = rep.index_of(t).expect("tableau has its own shape");
    idempotent_from_matrices(&rep, &matrices, k)
}

/// All primitive idempotents of shape `lambda`, in the standard tableau order.
pub fn primitive_idempotents<F: FloatScalar>(
    lambda: &Partition,
) -> Vec<(StandardTableau, GroupAlgebraElement<F>)> {
    let rep = YoungRepresentation::new(lambda);
    let matrices = rep.all_matrices();
    rep.tableaux()
        .iter()
        .enumerate()
        .map(|(k, t)| (t.clone(), idempotent_from_matrices(&rep, &matrices, k)))
        .collect()
}

fn idempotent_from_matrices<F: FloatScalar>(
    rep: &YoungRepresentation,
    matrices: &BTreeMap<Permutation, nalgebra::DMatrix<f64>>,
    k: usize,
) -> GroupAlgebraElement<F> {
    let h = hook_data(rep.shape()).hook_product as f64;
    let m = rep.shape().size();
    GroupAlgebraElement::from_terms(
        m,
        matrices.keys().map(|sigma| {
            let coeff = matrices[&sigma.inverse()][(k, k)] / h;
            (sigma.clone(), F::from_f64(coeff))
        }),
    )
}

/// `z_lambda = (f_lambda / m!) sum_sigma chi^lambda(sigma^{-1}) sigma`,
/// exact in every scalar mode.
pub fn central_idempotent<S: Scalar>(lambda: &Partition) -> GroupAlgebraElement<S> {
    let m = lambda.size();
    let table = character_table(m);
    let f = hook_data(lambda).dimension;
    let scale = Rational::new(f.into(), factorial(m).into());
    GroupAlgebraElement::from_terms(
        m,
        lex_permutations(m).map(|sigma| {
            let chi = table.value_at(lambda, &sigma.inverse());
            let c = scale.clone() * Rational::from_integer(chi.into());
            (sigma, S::from_rational(&c))
        }),
    )
}
