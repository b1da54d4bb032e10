use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{factorial, Partition};
use crate::error::{Error, Result};

/// A bijection of `{1..m}`, stored 0-based in one-line notation.
///
/// Composition follows function composition: `(s.compose(t))(k) = s(t(k))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Permutation((0..m).collect())
    }

    /// From 0-based images.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || seen[x] {
                return Err(Error::InvalidPermutation(images));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// From 1-based one-line notation, e.g. `[2, 3, 1]` for the 3-cycle `(1 2 3)`.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(images.to_vec()));
        }
        Self::from_images(images.iter().map(|&x| x - 1).collect())
    }

    /// From disjoint cycles written 1-based.
    pub fn from_cycles(m: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..m).collect();
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                if a == 0 || a > m || b == 0 || b > m {
                    return Err(Error::IndexOutOfRange {
                        index: a.max(b),
                        bound: m,
                    });
                }
                images[a - 1] = b - 1;
            }
        }
        Self::from_images(images)
    }

    /// The adjacent transposition `s_i = (i, i+1)`, `1 <= i < m`.
    pub fn adjacent(m: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= m {
            return Err(Error::IndexOutOfRange {
                index: i,
                bound: m.saturating_sub(1),
            });
        }
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(i - 1, i);
        Ok(Permutation(images))
    }

    /// Product `s_{w_1} s_{w_2} ... s_{w_k}` of adjacent transpositions.
    pub fn from_word(m: usize, word: &[usize]) -> Result<Self> {
        word.iter().try_fold(Self::identity(m), |acc, &i| {
            Ok(acc.compose(&Self::adjacent(m, i)?))
        })
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// 0-based image of the 0-based point `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.0[k]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(k, &x)| k == x)
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Permutation(other.0.iter().map(|&k| self.0[k]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (k, &x) in self.0.iter().enumerate() {
            inv[x] = k;
        }
        Permutation(inv)
    }

    pub fn cycle_type(&self) -> Partition {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut lengths = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.0[k];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(lengths).expect("cycle lengths form a partition")
    }

    pub fn sign(&self) -> i64 {
        let ct = self.cycle_type();
        if (self.degree() - ct.depth()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn inversions(&self) -> usize {
        let p = &self.0;
        (0..p.len())
            .map(|i| (i + 1..p.len()).filter(|&j| p[i] > p[j]).count())
            .sum()
    }

    /// A reduced word `[w_1, ..., w_k]` with `self = s_{w_1} ... s_{w_k}`,
    /// found by bubble sort. `k` equals the number of inversions.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut p = self.0.clone();
        let mut pushed = Vec::new();
        // Right-multiplying by s_i swaps one-line positions i-1 and i.
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..p.len().saturating_sub(1) {
                if p[i] > p[i + 1] {
                    p.swap(i, i + 1);
                    pushed.push(i + 1);
                    changed = true;
                }
            }
        }
        pushed.reverse();
        pushed
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;
    fn try_from(images: Vec<usize>) -> Result<Self> {
        Self::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<String> = self.0.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "[{}]", body.join(","))
    }
}

/// Permutations of `{1..m}` in lexicographic order of one-line notation.
#[derive(Clone, Debug)]
pub struct LexPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for LexPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut p = current.clone();
        if next_permutation(&mut p) {
            self.next = Some(p);
        }
        Some(Permutation(current))
    }
}

pub fn lex_permutations(m: usize) -> LexPermutations {
    LexPermutations {
        next: Some((0..m).collect()),
    }
}

/// Advances `p` to its lexicographic successor; false if `p` was the last.
pub fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let Some(i) = (0..p.len() - 1).rev().find(|&i| p[i] < p[i + 1]) else {
        return false;
    };
    let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("successor exists");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// The permutation of lexicographic rank `rank` (0-based) in `S_m`.
pub fn nth_lex_permutation(m: usize, mut rank: u64) -> Permutation {
    let mut pool: Vec<usize> = (0..m).collect();
    let mut out = Vec::with_capacity(m);
    for k in (0..m).rev() {
        let block = factorial(k);
        let idx = (rank / block) as usize;
        rank %= block;
        out.push(pool.remove(idx));
    }
    Permutation(out)
}
