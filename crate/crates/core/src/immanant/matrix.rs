use std::ops::{Index, IndexMut, Mul};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{check_size, Error, Result};
use crate::scalar::Scalar;

/// Dense square matrix, row-major, 0-based indexing.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn new(rows: Vec<Vec<S>>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            check_size("matrix row", n, row.len())?;
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn zeros(n: usize) -> Self {
        Self::from_fn(n, |_, _| S::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn diagonal(d: &[S]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { d[i].clone() } else { S::zero() })
    }

    /// All-ones matrix `J_n`.
    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| S::one())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<S>> {
        self.data.chunks(self.n.max(1)).map(<[S]>::to_vec).take(self.n).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].clone())
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Matrix<T> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// `a_ij == conj(a_ji)` for all `i, j` (within `tol` in float modes).
    pub fn is_hermitian(&self, tol: f64) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| self[(i, j)].approx_eq(&self[(j, i)].conj(), tol)))
    }

    /// `P^T A P` for the permutation matrix of `perm`: entry `(i, j)` is
    /// `a_{perm[i], perm[j]}`.
    pub fn permuted_similar(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.n, |i, j| self[(perm[i], perm[j])].clone())
    }

    /// The matrix built from rows `rows` and columns `cols` (0-based,
    /// repeats allowed).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        assert_eq!(rows.len(), cols.len(), "selection must be square");
        Self::from_fn(rows.len(), |i, j| self[(rows[i], cols[j])].clone())
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn determinant_elimination(&self) -> S {
        let n = self.n;
        if n == 0 {
            return S::one();
        }
        let mut a = self.rows();
        let mut negate = false;
        let mut prev = S::one();
        for k in 0..n - 1 {
            let pivot = if S::EXACT {
                (k..n).find(|&r| !a[r][k].is_zero())
            } else {
                (k..n)
                    .filter(|&r| !a[r][k].is_zero())
                    .max_by(|&x, &y| a[x][k].modulus().total_cmp(&a[y][k].modulus()))
            };
            let Some(p) = pivot else {
                return S::zero();
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a[i][j].clone() * a[k][k].clone()
                        - a[i][k].clone() * a[k][j].clone())
                        / prev.clone();
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// `{"n": n, "entries": [[...], ...]}` with scalars in their mode's text form.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(Scalar::to_json).collect()))
            .collect();
        serde_json::json!({ "n": self.n, "entries": entries })
    }

    /// Accepts the object form or a bare array of rows.
    pub fn from_json(value: &Value) -> Result<Self> {
        let (declared, rows) = match value {
            Value::Object(map) => {
                let rows = map
                    .get("entries")
                    .ok_or_else(|| Error::Parse("matrix object lacks \"entries\"".into()))?;
                let n = map.get("n").map(|v| {
                    v.as_u64()
                        .map(|x| x as usize)
                        .ok_or_else(|| Error::Parse("\"n\" must be a nonnegative integer".into()))
                });
                (n.transpose()?, rows)
            }
            other => (None, other),
        };
        let rows = rows
            .as_array()
            .ok_or_else(|| Error::Parse("matrix entries must be an array of rows".into()))?;
        let mut parsed = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| Error::Parse(format!("row {i} is not an array")))?;
            let mut out = Vec::with_capacity(row.len());
            for (j, x) in row.iter().enumerate() {
                out.push(
                    S::from_json(x)
                        .map_err(|e| Error::Parse(format!("entry ({i},{j}): {e}")))?,
                );
            }
            parsed.push(out);
        }
        let m = Matrix::new(parsed)?;
        if let Some(n) = declared {
            check_size("declared matrix size", n, m.n)?;
        }
        Ok(m)
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.n + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.n + j]
    }
}

impl<S: Scalar> Mul for &Matrix<S> {
    type Output = Matrix<S>;
    fn mul(self, rhs: Self) -> Matrix<S> {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        Matrix::from_fn(self.n, |i, j| {
            (0..self.n).fold(S::zero(), |acc, k| {
                acc + self[(i, k)].clone() * rhs[(k, j)].clone()
            })
        })
    }
}

impl<S: Scalar> Serialize for Matrix<S> {
    fn serialize<Z: Serializer>(&self, serializer: Z) -> std::result::Result<Z::Ok, Z::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de, S: Scalar> Deserialize<'de> for Matrix<S> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Value::deserialize(deserializer)?;
        Matrix::from_json(&v).map_err(serde::de::Error::custom)
    }
}
