use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{check_size, Error, Result};

/// A weakly decreasing sequence of positive integers. The stored form never
/// carries trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let decreasing = parts.windows(2).all(|w| w[0] >= w[1]);
        if !decreasing || parts.contains(&0) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The single-row partition `(m)`; empty for `m = 0`.
    pub fn row(m: usize) -> Self {
        if m == 0 {
            Self::empty()
        } else {
            Partition(vec![m])
        }
    }

    /// The single-column partition `(1^m)`.
    pub fn column(m: usize) -> Self {
        Partition(vec![1; m])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `i`-th part (0-based), zero past the depth.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition((0..width).map(|c| self.0.iter().filter(|&&p| p > c).count()).collect())
    }

    /// Cells `(row, col)` in row-major order, 0-based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    pub(crate) fn from_padded(parts: &[usize]) -> Self {
        Partition(parts.iter().copied().filter(|&p| p > 0).collect())
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `2,1`, `(2,1)` or `[2,1]`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        Partition::new(parse_int_list(s)?)
    }
}

/// `n` nonnegative integers summing to `m`; a weight of `GL_n` on the
/// `m`-th tensor power.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct WeakComposition(Vec<usize>);

impl WeakComposition {
    pub fn new(entries: Vec<usize>) -> Self {
        WeakComposition(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    /// Number of parts `n`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The sum `m`.
    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Rearranges entries by `w`: entry `k` of the result is entry `w[k]` of `self`.
    pub fn rearranged(&self, w: &[usize]) -> WeakComposition {
        WeakComposition(w.iter().map(|&k| self.0[k]).collect())
    }
}

impl From<Vec<usize>> for WeakComposition {
    fn from(v: Vec<usize>) -> Self {
        WeakComposition(v)
    }
}

impl From<WeakComposition> for Vec<usize> {
    fn from(w: WeakComposition) -> Self {
        w.0
    }
}

impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", join(&self.0))
    }
}

impl FromStr for WeakComposition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(WeakComposition(parse_int_list(s)?))
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

pub(crate) fn parse_int_list(s: &str) -> Result<Vec<usize>> {
    let body = s
        .trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']']);
    if body.trim().is_empty() {
        return Ok(Vec::new());
    }
    body.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("`{}` is not a nonnegative integer", t.trim())))
        })
        .collect()
}

/// All partitions of `m` with at most `max_depth` parts, in reverse
/// lexicographic order: `(3), (2,1), (1,1,1)`.
pub fn enumerate_partitions(m: usize, max_depth: Option<usize>) -> Vec<Partition> {
    fn go(
        remaining: usize,
        max_part: usize,
        depth_left: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition(prefix.clone()));
            return;
        }
        if depth_left == 0 {
            return;
        }
        for p in (1..=max_part.min(remaining)).rev() {
            prefix.push(p);
            go(remaining - p, p, depth_left - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(m, m, max_depth.unwrap_or(m), &mut Vec::new(), &mut out);
    out
}

/// All weak compositions of `m` into `n` parts, in reverse lexicographic
/// order (`(m,0,..,0)` first).
pub fn enumerate_weak_compositions(m: usize, n: usize) -> Vec<WeakComposition> {
    fn go(remaining: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<WeakComposition>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(WeakComposition(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=remaining).rev() {
            prefix.push(first);
            go(remaining - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if m == 0 {
            out.push(WeakComposition(Vec::new()));
        }
        return out;
    }
    go(m, n, &mut Vec::new(), &mut out);
    out
}

/// Dominance order: every partial sum of `lambda` is at least the matching
/// partial sum of `kappa`.
pub fn dominates(lambda: &Partition, kappa: &Partition) -> Result<bool> {
    check_size("dominance", lambda.size(), kappa.size())?;
    let len = lambda.depth().max(kappa.depth());
    let (mut a, mut b) = (0usize, 0usize);
    for i in 0..len {
        a += lambda.part(i);
        b += kappa.part(i);
        if a < b {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Decreasing rearrangement with zeros dropped.
pub fn sort_to_partition(mu: &WeakComposition) -> Partition {
    let mut parts: Vec<usize> = mu.entries().iter().copied().filter(|&x| x > 0).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition(parts)
}

pub fn factorial(k: usize) -> u64 {
    assert!(k <= 20, "factorial({k}) overflows u64");
    (1..=k as u64).product()
}

/// `m! / prod(mu_i!)`: the number of multi-indices of weight `mu`.
pub fn multinomial(mu: &WeakComposition) -> u64 {
    mu.entries()
        .iter()
        .fold(factorial(mu.size()), |acc, &k| acc / factorial(k))
}

/// The nondecreasing multiset `I = (1^{m_1}, ..., n^{m_n})` of a weight.
/// Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultisetIndex {
    indices: Vec<usize>,
    multiplicities: Vec<usize>,
}

impl MultisetIndex {
    /// Builds `I` from a nondecreasing list of 1-based indices in `1..=n`.
    pub fn from_indices(indices: Vec<usize>, n: usize) -> Result<Self> {
        let mut multiplicities = vec![0; n];
        for w in indices.windows(2) {
            if w[0] > w[1] {
                return Err(Error::Parse(format!(
                    "multiset indices must be nondecreasing, got {indices:?}"
                )));
            }
        }
        for &i in &indices {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, bound: n });
            }
            multiplicities[i - 1] += 1;
        }
        Ok(MultisetIndex {
            indices,
            multiplicities,
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// The weight `mu` with `mu_i = m_i(I)`.
    pub fn weight(&self) -> WeakComposition {
        WeakComposition(self.multiplicities.clone())
    }

    /// `m(I) = m_1! m_2! ... m_n!`.
    pub fn m_of_i(&self) -> u64 {
        self.multiplicities.iter().map(|&k| factorial(k)).product()
    }
}

pub fn multiset_from_weight(mu: &WeakComposition) -> MultisetIndex {
    let indices = mu
        .entries()
        .iter()
        .enumerate()
        .flat_map(|(i, &k)| std::iter::repeat_n(i + 1, k))
        .collect();
    MultisetIndex {
        indices,
        multiplicities: mu.entries().to_vec(),
    }
}

/// Hook lengths `h(i,j)`, their product `h_lambda`, and `f_lambda = m!/h_lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HookData {
    pub hooks: Vec<Vec<usize>>,
    pub hook_product: u64,
    pub dimension: u64,
}

pub fn hook_data(lambda: &Partition) -> HookData {
    let conj = lambda.conjugate();
    let hooks: Vec<Vec<usize>> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(r, &len)| (0..len).map(|c| (len - c) + (conj.part(c) - r) - 1).collect())
        .collect();
    let hook_product: u64 = hooks.iter().flatten().map(|&h| h as u64).product();
    HookData {
        dimension: factorial(lambda.size()) / hook_product,
        hooks,
        hook_product,
    }
}
