//! Irreducible characters of `S_m` by the Murnaghan-Nakayama rule.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use serde_json::{Map, Value};

use super::permutation::Permutation;
use crate::combinatorics::{enumerate_partitions, factorial, Partition};
use crate::error::{check_size, Result};

/// `chi^lambda` on the class of cycle type `rho`.
pub fn mn_character(lambda: &Partition, rho: &Partition) -> Result<i64> {
    check_size("character", lambda.size(), rho.size())?;
    let mut memo = HashMap::new();
    Ok(mn_recursive(lambda.parts(), rho.parts(), &mut memo))
}

/// Strips a border strip of length `rho[0]` in every possible way, using
/// beta-numbers: a strip of length `r` moves one bead from `b` to `b - r`,
/// with sign `(-1)^(beads strictly between)`.
fn mn_recursive(
    lambda: &[usize],
    rho: &[usize],
    memo: &mut HashMap<(Vec<usize>, Vec<usize>), i64>,
) -> i64 {
    let Some((&r, rest)) = rho.split_first() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    let key = (lambda.to_vec(), rho.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let d = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + d - 1 - i).collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let target = b - r;
        let between = beta.iter().filter(|&&x| x > target && x < b).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|x, y| y.cmp(x));
        let reduced: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(k, &x)| x - (d - 1 - k))
            .filter(|&p| p > 0)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * mn_recursive(&reduced, rest, memo);
    }
    memo.insert(key, total);
    total
}

/// `z_rho = prod_i i^{k_i} k_i!` where `k_i` counts parts equal to `i`.
pub fn centralizer_order(rho: &Partition) -> u64 {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in rho.parts() {
        *counts.entry(p).or_default() += 1;
    }
    counts
        .iter()
        .map(|(&i, &k)| (i as u64).pow(k as u32) * factorial(k))
        .product()
}

/// Number of permutations of cycle type `rho`.
pub fn class_size(rho: &Partition) -> u64 {
    factorial(rho.size()) / centralizer_order(rho)
}

/// Full character table of `S_m`. Rows (irreducibles) and columns (classes)
/// are both indexed by the partitions of `m` in reverse lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterTable {
    m: usize,
    partitions: Vec<Partition>,
    index: HashMap<Partition, usize>,
    values: Vec<Vec<i64>>,
}

impl CharacterTable {
    pub fn new(m: usize) -> Self {
        let partitions = enumerate_partitions(m, None);
        let mut memo = HashMap::new();
        let values = partitions
            .iter()
            .map(|lambda| {
                partitions
                    .iter()
                    .map(|rho| mn_recursive(lambda.parts(), rho.parts(), &mut memo))
                    .collect()
            })
            .collect();
        let index = partitions
            .iter()
            .enumerate()
            .map(|(k, p)| (p.clone(), k))
            .collect();
        CharacterTable {
            m,
            partitions,
            index,
            values,
        }
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn position(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `chi^lambda(rho)`; panics if either partition is not of size `m`.
    pub fn value(&self, lambda: &Partition, rho: &Partition) -> i64 {
        self.values[self.index[lambda]][self.index[rho]]
    }

    pub fn value_at(&self, lambda: &Partition, sigma: &Permutation) -> i64 {
        self.value(lambda, &sigma.cycle_type())
    }

    /// Row of `chi^lambda` over the class order of [`Self::partitions`].
    pub fn row(&self, lambda: &Partition) -> &[i64] {
        &self.values[self.index[lambda]]
    }

    /// `{ "[2,1]": { "[3]": -1, ... }, ... }`
    pub fn to_json(&self) -> Value {
        let key = |p: &Partition| serde_json::to_string(p).expect("partition serializes");
        let mut outer = Map::new();
        for (i, lambda) in self.partitions.iter().enumerate() {
            let mut inner = Map::new();
            for (j, rho) in self.partitions.iter().enumerate() {
                inner.insert(key(rho), Value::from(self.values[i][j]));
            }
            outer.insert(key(lambda), Value::Object(inner));
        }
        Value::Object(outer)
    }
}

/// Shared, memoized character table of `S_m`.
pub fn character_table(m: usize) -> Arc<CharacterTable> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<CharacterTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("character cache poisoned").get(&m) {
        return Arc::clone(t);
    }
    let table = Arc::new(CharacterTable::new(m));
    cache
        .lock()
        .expect("character cache poisoned")
        .entry(m)
        .or_insert(table)
        .clone()
}
