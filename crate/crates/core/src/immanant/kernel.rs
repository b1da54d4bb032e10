//! Immanant kernels: `Imm_lambda(B) = sum_sigma chi^lambda(sigma) prod_i b_{sigma(i), i}`.
//!
//! Every kernel walks `S_m` in lexicographic one-line order, so results are
//! deterministic; the parallel kernel cuts that stream into fixed-size
//! chunks whose partial sums are added in chunk order regardless of the
//! number of worker threads.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::matrix::Matrix;
use crate::combinatorics::{factorial, Partition};
use crate::error::{check_size, Error, Result};
use crate::scalar::Scalar;
use crate::symmetric_group::{character_table, next_permutation, nth_lex_permutation};

/// Permutations per parallel work unit.
pub const PARALLEL_CHUNK: u64 = 90;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelStrategy {
    /// One character lookup per permutation.
    Naive,
    /// Sums products per conjugacy class, then weighs each class once.
    CycleCached,
    /// Chunked lexicographic stream on a pool of `workers` threads
    /// (`0` = rayon's global pool).
    Parallel { workers: usize },
}

impl FromStr for KernelStrategy {
    type Err = Error;

    /// `naive`, `cycle-cached`, `parallel` or `parallel:<workers>`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "naive" => Ok(Self::Naive),
            "cycle-cached" => Ok(Self::CycleCached),
            "parallel" => Ok(Self::Parallel { workers: 0 }),
            other => other
                .strip_prefix("parallel:")
                .and_then(|w| w.parse().ok())
                .map(|workers| Self::Parallel { workers })
                .ok_or_else(|| Error::UnknownStrategy(other.to_string())),
        }
    }
}

impl fmt::Display for KernelStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Naive => f.write_str("naive"),
            Self::CycleCached => f.write_str("cycle-cached"),
            Self::Parallel { workers: 0 } => f.write_str("parallel"),
            Self::Parallel { workers } => write!(f, "parallel:{workers}"),
        }
    }
}

/// `prod_i b_{p(i), i}`, or `None` as soon as a factor vanishes.
fn diagonal_product<S: Scalar>(b: &Matrix<S>, p: &[usize]) -> Option<S> {
    let mut acc = S::one();
    for (i, &pi) in p.iter().enumerate() {
        let x = &b[(pi, i)];
        if x.is_zero() {
            return None;
        }
        acc = acc * x.clone();
    }
    Some(acc)
}

fn cycle_type_of(p: &[usize], seen: &mut [bool]) -> Partition {
    seen.iter_mut().for_each(|s| *s = false);
    let mut lengths = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let (mut k, mut len) = (start, 0);
        while !seen[k] {
            seen[k] = true;
            k = p[k];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(lengths).expect("cycle lengths form a partition")
}

/// Naive sum over permutations with lexicographic ranks in `[start, end)`.
fn naive_range<S: Scalar>(b: &Matrix<S>, lambda: &Partition, start: u64, end: u64) -> S {
    let m = b.n();
    let table = character_table(m);
    let mut p = nth_lex_permutation(m, start).images().to_vec();
    let mut seen = vec![false; m];
    let mut acc = S::zero();
    for _ in start..end {
        if let Some(prod) = diagonal_product(b, &p) {
            let chi = table.value(lambda, &cycle_type_of(&p, &mut seen));
            if chi != 0 {
                acc = acc + S::from_i64(chi) * prod;
            }
        }
        next_permutation(&mut p);
    }
    acc
}

/// Class sums `S_rho = sum_{sigma of type rho} prod_i b_{sigma(i), i}`.
pub fn class_sums<S: Scalar>(b: &Matrix<S>) -> BTreeMap<Partition, S> {
    let m = b.n();
    let mut sums: BTreeMap<Partition, S> = BTreeMap::new();
    let mut p: Vec<usize> = (0..m).collect();
    let mut seen = vec![false; m];
    loop {
        if let Some(prod) = diagonal_product(b, &p) {
            let slot = sums.entry(cycle_type_of(&p, &mut seen)).or_insert_with(S::zero);
            *slot = slot.clone() + prod;
        }
        if !next_permutation(&mut p) {
            break;
        }
    }
    sums
}

fn weigh_classes<S: Scalar>(sums: &BTreeMap<Partition, S>, lambda: &Partition, m: usize) -> S {
    let table = character_table(m);
    sums.iter().fold(S::zero(), |acc, (rho, s)| {
        acc + S::from_i64(table.value(lambda, rho)) * s.clone()
    })
}

pub fn immanant_with<S: Scalar>(b: &Matrix<S>, lambda: &Partition, strategy: KernelStrategy) -> Result<S> {
    let m = b.n();
    check_size("immanant", m, lambda.size())?;
    let total = factorial(m);
    Ok(match strategy {
        KernelStrategy::Naive => naive_range(b, lambda, 0, total),
        KernelStrategy::CycleCached => weigh_classes(&class_sums(b), lambda, m),
        KernelStrategy::Parallel { workers } => {
            let chunks: Vec<(u64, u64)> = (0..total.div_ceil(PARALLEL_CHUNK))
                .map(|k| (k * PARALLEL_CHUNK, ((k + 1) * PARALLEL_CHUNK).min(total)))
                .collect();
            let run = || -> Vec<S> {
                chunks
                    .par_iter()
                    .map(|&(s, e)| naive_range(b, lambda, s, e))
                    .collect()
            };
            let partials = if workers == 0 {
                run()
            } else {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(workers)
                    .build()
                    .map_err(|e| Error::ResourceGuard(format!("thread pool: {e}")))?
                    .install(run)
            };
            partials.into_iter().fold(S::zero(), |acc, x| acc + x)
        }
    })
}

/// `Imm_lambda(B)` with the cycle-cached kernel.
pub fn immanant<S: Scalar>(b: &Matrix<S>, lambda: &Partition) -> Result<S> {
    immanant_with(b, lambda, KernelStrategy::CycleCached)
}

/// Every `Imm_lambda(B)`, `lambda ⊢ m`, from one pass over `S_m`.
pub fn immanants_all_shapes<S: Scalar>(b: &Matrix<S>) -> BTreeMap<Partition, S> {
    let m = b.n();
    let sums = class_sums(b);
    character_table(m)
        .partitions()
        .iter()
        .map(|lambda| (lambda.clone(), weigh_classes(&sums, lambda, m)))
        .collect()
}

pub fn permanent<S: Scalar>(b: &Matrix<S>) -> S {
    immanant(b, &Partition::row(b.n())).expect("row shape has size n")
}

/// The immanant at `(1^n)`; see [`Matrix::determinant_elimination`] for the
/// elimination route.
pub fn determinant<S: Scalar>(b: &Matrix<S>) -> S {
    immanant(b, &Partition::column(b.n())).expect("column shape has size n")
}
