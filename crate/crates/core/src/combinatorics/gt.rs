use serde::{Deserialize, Serialize};

use super::partition::{Partition, WeakComposition};
use super::tableau::SemistandardTableau;
use crate::error::{Error, Result};

/// A Gelfand-Tsetlin pattern: row `i` (1-based) has `i` entries and
/// consecutive rows interlace, `l[i][j] >= l[i-1][j] >= l[i][j+1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct GtPattern {
    rows: Vec<Vec<usize>>,
}

impl GtPattern {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != i + 1 {
                return Err(Error::InvalidPattern(format!(
                    "row {} has {} entries",
                    i + 1,
                    row.len()
                )));
            }
        }
        for i in 1..rows.len() {
            for j in 0..i {
                let (upper, lower, next) = (rows[i][j], rows[i - 1][j], rows[i][j + 1]);
                if !(upper >= lower && lower >= next) {
                    return Err(Error::InvalidPattern(format!(
                        "interlacing fails at row {}, position {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(GtPattern { rows })
    }

    /// Number of rows `n`.
    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Row `k` (1-based): `(l_{k1}, ..., l_{kk})`.
    pub fn row(&self, k: usize) -> &[usize] {
        &self.rows[k - 1]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// The top row as a partition.
    pub fn shape(&self) -> Partition {
        self.rows
            .last()
            .map(|r| Partition::from_padded(r))
            .unwrap_or_default()
    }

    /// `mu_i = sum_k l_{ik} - sum_s l_{i-1,s}`.
    pub fn weight(&self) -> WeakComposition {
        let sums: Vec<usize> = self.rows.iter().map(|r| r.iter().sum()).collect();
        WeakComposition::new(
            (0..sums.len())
                .map(|i| sums[i] - if i == 0 { 0 } else { sums[i - 1] })
                .collect(),
        )
    }
}

impl TryFrom<Vec<Vec<usize>>> for GtPattern {
    type Error = Error;
    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        GtPattern::new(rows)
    }
}

impl From<GtPattern> for Vec<Vec<usize>> {
    fn from(p: GtPattern) -> Self {
        p.rows
    }
}

/// `l_{ij}` = number of entries `<= i` in row `j` of `t`.
pub fn gt_from_ssyt(t: &SemistandardTableau, n: usize) -> Result<GtPattern> {
    if let Some(&bad) = t.rows().iter().flatten().find(|&&x| x > n) {
        return Err(Error::IndexOutOfRange { index: bad, bound: n });
    }
    if t.shape().depth() > n {
        return Err(Error::InvalidPattern(format!(
            "shape {} has more than {n} rows",
            t.shape()
        )));
    }
    let rows = (1..=n)
        .map(|i| {
            (0..i)
                .map(|j| {
                    t.rows()
                        .get(j)
                        .map_or(0, |row| row.iter().filter(|&&x| x <= i).count())
                })
                .collect()
        })
        .collect();
    GtPattern::new(rows)
}

/// Inverse of [`gt_from_ssyt`]: row `j` receives `l_{ij} - l_{i-1,j}` copies of `i`.
pub fn ssyt_from_gt(pattern: &GtPattern) -> Result<SemistandardTableau> {
    let n = pattern.n();
    let depth = pattern.shape().depth();
    let mut rows = vec![Vec::new(); depth];
    for i in 1..=n {
        for (j, row) in rows.iter_mut().enumerate().take(i) {
            let now = pattern.row(i)[j];
            let before = if j < i - 1 { pattern.row(i - 1)[j] } else { 0 };
            row.extend(std::iter::repeat_n(i, now - before));
        }
    }
    SemistandardTableau::new(rows, n)
}
