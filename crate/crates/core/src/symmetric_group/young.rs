//! Young's orthogonal form of the irreducible `S_m`-module `V^lambda`.
//!
//! The basis `{v_T}` is indexed by standard tableaux in row-reading-word
//! order. For `r = c(i+1) - c(i)`, the axial distance between the nodes
//! holding `i+1` and `i`,
//!
//! ```text
//! s_i v_T = (1/r) v_T + sqrt(1 - 1/r^2) v_{s_i T}
//! ```
//!
//! where the second term is absent when `s_i T` is not standard.

use std::collections::{BTreeMap, HashMap, VecDeque};

use nalgebra::DMatrix;

use super::permutation::Permutation;
use crate::combinatorics::{enumerate_syt, Partition, StandardTableau};
use crate::error::{check_size, Error, Result};

pub type RepMatrix = DMatrix<f64>;

#[derive(Clone, Debug)]
pub struct YoungRepresentation {
    shape: Partition,
    tableaux: Vec<StandardTableau>,
    index: HashMap<StandardTableau, usize>,
    generators: Vec<RepMatrix>,
}

impl YoungRepresentation {
    pub fn new(shape: &Partition) -> Self {
        let tableaux = enumerate_syt(shape);
        let index: HashMap<StandardTableau, usize> = tableaux
            .iter()
            .enumerate()
            .map(|(k, t)| (t.clone(), k))
            .collect();
        let m = shape.size();
        let f = tableaux.len();
        let contents: Vec<Vec<i64>> = tableaux.iter().map(StandardTableau::contents).collect();
        let generators = (1..m)
            .map(|i| {
                let mut g = RepMatrix::zeros(f, f);
                for (a, t) in tableaux.iter().enumerate() {
                    let r = (contents[a][i] - contents[a][i - 1]) as f64;
                    g[(a, a)] = 1.0 / r;
                    if r.abs() != 1.0 {
                        let partner = t.swapped(i).expect("|r| > 1 means s_i T is standard");
                        g[(index[&partner], a)] = (1.0 - 1.0 / (r * r)).sqrt();
                    }
                }
                g
            })
            .collect();
        YoungRepresentation {
            shape: shape.clone(),
            tableaux,
            index,
            generators,
        }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// `f_lambda`.
    pub fn dimension(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[StandardTableau] {
        &self.tableaux
    }

    pub fn index_of(&self, t: &StandardTableau) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Matrix of `s_i`, `1 <= i <= m - 1`.
    pub fn generator(&self, i: usize) -> Result<&RepMatrix> {
        if i == 0 || i > self.generators.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: self.generators.len(),
            });
        }
        Ok(&self.generators[i - 1])
    }

    pub fn matrix(&self, sigma: &Permutation) -> Result<RepMatrix> {
        check_size("representation matrix", self.shape.size(), sigma.degree())?;
        self.word_matrix(&sigma.reduced_word())
    }

    /// Product of generator matrices along an arbitrary word.
    pub fn word_matrix(&self, word: &[usize]) -> Result<RepMatrix> {
        let f = self.dimension();
        word.iter()
            .try_fold(RepMatrix::identity(f, f), |acc, &i| Ok(acc * self.generator(i)?))
    }

    /// `M(sigma)` for every `sigma` in `S_m`, built breadth-first from the
    /// identity by right multiplication with generators.
    pub fn all_matrices(&self) -> BTreeMap<Permutation, RepMatrix> {
        let m = self.shape.size();
        let f = self.dimension();
        let mut out = BTreeMap::new();
        let mut queue = VecDeque::new();
        out.insert(Permutation::identity(m), RepMatrix::identity(f, f));
        queue.push_back(Permutation::identity(m));
        while let Some(sigma) = queue.pop_front() {
            for i in 1..m {
                let next = sigma.compose(&Permutation::adjacent(m, i).expect("valid generator"));
                if !out.contains_key(&next) {
                    let mat = &out[&sigma] * &self.generators[i - 1];
                    out.insert(next.clone(), mat);
                    queue.push_back(next);
                }
            }
        }
        out
    }
}

pub fn young_orthogonal_generator(lambda: &Partition, i: usize) -> Result<RepMatrix> {
    YoungRepresentation::new(lambda).generator(i).cloned()
}

pub fn rep_matrix(lambda: &Partition, sigma: &Permutation) -> Result<RepMatrix> {
    YoungRepresentation::new(lambda).matrix(sigma)
}
