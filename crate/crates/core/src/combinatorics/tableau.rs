use serde::Serialize;

use super::partition::{multiset_from_weight, Partition, WeakComposition};
use crate::error::{check_size, Error, Result};

fn shape_of(rows: &[Vec<usize>]) -> Result<Partition> {
    Partition::new(rows.iter().map(Vec::len).collect())
        .map_err(|_| Error::InvalidTableau(format!("row lengths of {rows:?} do not form a partition")))
}

fn columns_strict(rows: &[Vec<usize>]) -> bool {
    rows.windows(2)
        .all(|w| w[1].iter().zip(&w[0]).all(|(below, above)| below > above))
}

/// A filling of a Young diagram by `1..=m`, rows and columns strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "Vec<Vec<usize>>")]
pub struct StandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
}

impl StandardTableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = shape_of(&rows)?;
        let m = shape.size();
        let mut seen = vec![false; m + 1];
        for &x in rows.iter().flatten() {
            if x == 0 || x > m || seen[x] {
                return Err(Error::InvalidTableau(format!(
                    "{rows:?} is not a filling by 1..={m}"
                )));
            }
            seen[x] = true;
        }
        let rows_ok = rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]));
        if !rows_ok || !columns_strict(&rows) {
            return Err(Error::InvalidTableau(format!("{rows:?} is not standard")));
        }
        Ok(StandardTableau { shape, rows })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    /// Row-major reading word.
    pub fn reading_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }

    /// 0-based `(row, col)` of entry `k`.
    pub fn position(&self, k: usize) -> Option<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .find_map(|(r, row)| row.iter().position(|&x| x == k).map(|c| (r, c)))
    }

    /// Contents `col - row` of entries `1..=m`, indexed by entry - 1.
    pub fn contents(&self) -> Vec<i64> {
        let mut out = vec![0; self.size()];
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                out[x - 1] = c as i64 - r as i64;
            }
        }
        out
    }

    /// The tableau with entries `i` and `i+1` exchanged, if still standard.
    pub fn swapped(&self, i: usize) -> Option<StandardTableau> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| match x {
                        x if x == i => i + 1,
                        x if x == i + 1 => i,
                        x => x,
                    })
                    .collect()
            })
            .collect();
        StandardTableau::new(rows).ok()
    }
}

impl From<StandardTableau> for Vec<Vec<usize>> {
    fn from(t: StandardTableau) -> Self {
        t.rows
    }
}

/// Standard tableaux of shape `lambda` in lexicographic order of their
/// row-reading words.
pub fn enumerate_syt(lambda: &Partition) -> Vec<StandardTableau> {
    fn go(
        lambda: &Partition,
        next: usize,
        m: usize,
        rows: &mut Vec<Vec<usize>>,
        out: &mut Vec<StandardTableau>,
    ) {
        if next > m {
            out.push(StandardTableau {
                shape: lambda.clone(),
                rows: rows.clone(),
            });
            return;
        }
        for r in 0..lambda.depth() {
            let len = rows[r].len();
            let fits = len < lambda.part(r) && (r == 0 || rows[r - 1].len() > len);
            if fits {
                rows[r].push(next);
                go(lambda, next + 1, m, rows, out);
                rows[r].pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut rows = vec![Vec::new(); lambda.depth()];
    go(lambda, 1, lambda.size(), &mut rows, &mut out);
    out.sort_by_key(StandardTableau::reading_word);
    out
}

/// Rows weakly increasing, columns strictly increasing, entries in `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SemistandardTableau {
    shape: Partition,
    rows: Vec<Vec<usize>>,
    n: usize,
}

impl SemistandardTableau {
    pub fn new(rows: Vec<Vec<usize>>, n: usize) -> Result<Self> {
        let shape = shape_of(&rows)?;
        if let Some(&bad) = rows.iter().flatten().find(|&&x| x == 0 || x > n) {
            return Err(Error::IndexOutOfRange { index: bad, bound: n });
        }
        let rows_ok = rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
        if !rows_ok || !columns_strict(&rows) {
            return Err(Error::InvalidTableau(format!("{rows:?} is not semistandard")));
        }
        Ok(SemistandardTableau { shape, rows, n })
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Entry bound `n`.
    pub fn bound(&self) -> usize {
        self.n
    }

    /// Content vector: `mu_i` is the number of entries equal to `i`.
    pub fn weight(&self) -> WeakComposition {
        let mut mu = vec![0; self.n];
        for &x in self.rows.iter().flatten() {
            mu[x - 1] += 1;
        }
        WeakComposition::new(mu)
    }
}

/// Walks the chains `0 = s_0 ⊂ s_1 ⊂ ... ⊂ s_n = lambda` where `s_i / s_{i-1}`
/// is a horizontal strip of size `mu_i`, calling `visit` with the filling
/// produced by each chain.
fn for_each_strip_chain(
    lambda: &Partition,
    mu: &WeakComposition,
    visit: &mut dyn FnMut(&[Vec<usize>]),
) {
    struct Walk<'a> {
        target: Vec<usize>,
        mu: &'a [usize],
        rows: Vec<Vec<usize>>,
    }

    // Places `left` more copies of `value` into rows `j..`, each row bounded
    // by the target and by the pre-step length of the row above.
    fn place(
        w: &mut Walk<'_>,
        value: usize,
        j: usize,
        left: usize,
        before: &[usize],
        visit: &mut dyn FnMut(&[Vec<usize>]),
    ) {
        if left == 0 {
            step(w, value + 1, visit);
            return;
        }
        if j >= w.target.len() {
            return;
        }
        let cap_above = if j == 0 { usize::MAX } else { before[j - 1] };
        let max_len = w.target[j].min(cap_above);
        let room = max_len.saturating_sub(before[j]);
        let room_below: usize = (j + 1..w.target.len())
            .map(|r| w.target[r].min(before[r - 1]).saturating_sub(before[r]))
            .sum();
        for k in (0..=room.min(left)).rev() {
            if left - k > room_below {
                break;
            }
            w.rows[j].extend(std::iter::repeat_n(value, k));
            place(w, value, j + 1, left - k, before, visit);
            let len = w.rows[j].len();
            w.rows[j].truncate(len - k);
        }
    }

    fn step(w: &mut Walk<'_>, value: usize, visit: &mut dyn FnMut(&[Vec<usize>])) {
        if value > w.mu.len() {
            if w.rows.iter().map(Vec::len).eq(w.target.iter().copied()) {
                visit(&w.rows);
            }
            return;
        }
        let before: Vec<usize> = w.rows.iter().map(Vec::len).collect();
        let count = w.mu[value - 1];
        place(w, value, 0, count, &before, visit);
    }

    let mut walk = Walk {
        target: lambda.parts().to_vec(),
        mu: mu.entries(),
        rows: vec![Vec::new(); lambda.depth()],
    };
    step(&mut walk, 1, visit);
}

/// All semistandard tableaux of shape `lambda` and content `mu` (entries
/// bounded by `n = mu.len()`).
pub fn enumerate_ssyt(lambda: &Partition, mu: &WeakComposition) -> Result<Vec<SemistandardTableau>> {
    check_size("semistandard tableaux", lambda.size(), mu.size())?;
    let mut out = Vec::new();
    for_each_strip_chain(lambda, mu, &mut |rows| {
        out.push(SemistandardTableau {
            shape: lambda.clone(),
            rows: rows.to_vec(),
            n: mu.len(),
        });
    });
    Ok(out)
}

/// Kostka number `K_{lambda, mu}`: the dimension of the `mu`-weight space of
/// the irreducible `GL_n`-module of highest weight `lambda`.
pub fn kostka(lambda: &Partition, mu: &WeakComposition) -> Result<u64> {
    check_size("kostka", lambda.size(), mu.size())?;
    let mut count = 0u64;
    for_each_strip_chain(lambda, mu, &mut |_| count += 1);
    Ok(count)
}

/// `dim U^lambda` for `GL_n`: all semistandard tableaux with entries `<= n`.
pub fn count_ssyt_bounded(lambda: &Partition, n: usize) -> u64 {
    super::partition::enumerate_weak_compositions(lambda.size(), n)
        .iter()
        .map(|mu| kostka(lambda, mu).unwrap_or(0))
        .sum()
}

/// The image of a standard tableau under `theta_mu`, which relabels node
/// `r` by the `r`-th element of the nondecreasing multiset of `mu`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaImage {
    pub rows: Vec<Vec<usize>>,
    pub is_semistandard: bool,
}

impl ThetaImage {
    pub fn to_ssyt(&self, n: usize) -> Option<SemistandardTableau> {
        if self.is_semistandard {
            SemistandardTableau::new(self.rows.clone(), n).ok()
        } else {
            None
        }
    }
}

pub fn theta_mu(t: &StandardTableau, mu: &WeakComposition) -> Result<ThetaImage> {
    check_size("theta_mu", t.size(), mu.size())?;
    let multiset = multiset_from_weight(mu);
    let idx = multiset.indices();
    let rows: Vec<Vec<usize>> = t
        .rows()
        .iter()
        .map(|row| row.iter().map(|&r| idx[r - 1]).collect())
        .collect();
    let rows_ok = rows.iter().all(|r| r.windows(2).all(|w| w[0] <= w[1]));
    let is_semistandard = rows_ok && columns_strict(&rows);
    Ok(ThetaImage {
        rows,
        is_semistandard,
    })
}
