//! Certified generators for the two matrix classes of interest: Hermitian
//! positive (semi)definite matrices `A = conj(U)^t D U` and totally
//! nonnegative matrices `A = U_- U_+ D` built from elementary bidiagonal
//! factors. Each instance keeps its factorization, which serializes to JSON
//! and reproduces the matrix exactly.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::immanant::Matrix;
use crate::scalar::{gaussian, rational_text, GaussianRational, Rational, Scalar};

/// Largest matrix order accepted by [`is_totally_nonnegative`].
pub const MAX_TN_CHECK: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `I + t E_{i+1,i}`
    Lower,
    /// `I + t E_{i,i+1}`
    Upper,
}

/// `exp(t E) = I + t E` for `E = E_{i,i+1}` (upper) or `E_{i+1,i}` (lower),
/// `1 <= i <= n - 1`.
pub fn elementary_bidiagonal(n: usize, i: usize, t: &Rational, side: Side) -> Result<Matrix<Rational>> {
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, bound: n.saturating_sub(1) });
    }
    if !t.is_positive() {
        return Err(Error::NonPositiveParameter(format!("bidiagonal parameter {t}")));
    }
    let mut a = Matrix::identity(n);
    let (r, c) = match side {
        Side::Upper => (i - 1, i),
        Side::Lower => (i, i - 1),
    };
    a[(r, c)] = t.clone();
    Ok(a)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BidiagonalFactor {
    pub index: usize,
    #[serde(with = "rational_text")]
    pub param: Rational,
}

/// `A = U_- U_+ D`; the factors of each triangle are multiplied in the
/// stored order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawTn")]
pub struct FactoredTN {
    n: usize,
    lower: Vec<BidiagonalFactor>,
    upper: Vec<BidiagonalFactor>,
    #[serde(with = "rational_text::vec")]
    d: Vec<Rational>,
}

#[derive(Deserialize)]
struct RawTn {
    n: usize,
    lower: Vec<BidiagonalFactor>,
    upper: Vec<BidiagonalFactor>,
    #[serde(with = "rational_text::vec")]
    d: Vec<Rational>,
}

impl TryFrom<RawTn> for FactoredTN {
    type Error = Error;
    fn try_from(raw: RawTn) -> Result<Self> {
        FactoredTN::new(raw.n, raw.lower, raw.upper, raw.d)
    }
}

impl FactoredTN {
    /// Parameters must be positive; diagonal entries nonnegative (zeros give
    /// singular instances).
    pub fn new(n: usize, lower: Vec<BidiagonalFactor>, upper: Vec<BidiagonalFactor>, d: Vec<Rational>) -> Result<Self> {
        if d.len() != n {
            return Err(Error::SizeMismatch {
                context: "diagonal length",
                expected: n,
                found: d.len(),
            });
        }
        for f in lower.iter().chain(&upper) {
            elementary_bidiagonal(n, f.index, &f.param, Side::Upper)?;
        }
        if let Some(x) = d.iter().find(|x| x.is_negative()) {
            return Err(Error::NonPositiveParameter(format!("diagonal entry {x}")));
        }
        Ok(FactoredTN { n, lower, upper, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lower(&self) -> &[BidiagonalFactor] {
        &self.lower
    }

    pub fn upper(&self) -> &[BidiagonalFactor] {
        &self.upper
    }

    pub fn diagonal(&self) -> &[Rational] {
        &self.d
    }

    pub fn is_nonsingular(&self) -> bool {
        self.d.iter().all(|x| !x.is_zero())
    }

    pub fn matrix(&self) -> Matrix<Rational> {
        let mut a = Matrix::identity(self.n);
        for (side, factors) in [(Side::Lower, &self.lower), (Side::Upper, &self.upper)] {
            for f in factors {
                let e = elementary_bidiagonal(self.n, f.index, &f.param, side).expect("validated factor");
                a = &a * &e;
            }
        }
        &a * &Matrix::diagonal(&self.d)
    }

    pub fn determinant(&self) -> Rational {
        self.d.iter().fold(Rational::one(), |acc, x| acc * x)
    }

    /// Sets `d_i = 0` for the given 0-based positions.
    pub fn with_zero_diagonal(mut self, positions: &[usize]) -> Self {
        for &i in positions {
            self.d[i] = Rational::zero();
        }
        self
    }
}

/// `p/q` with `1 <= p, q <= 10`.
fn small_positive(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.random_range(1..=10).into(), rng.random_range(1..=10).into())
}

/// `p/q` with `-10 <= p <= 10`, `1 <= q <= 10`.
fn small_signed(rng: &mut ChaCha8Rng) -> Rational {
    Rational::new(rng.random_range(-10..=10).into(), rng.random_range(1..=10).into())
}

/// `num_factors` random factors in each triangle, with indices and
/// parameters in draw order, and a positive diagonal.
pub fn random_tn_nonsingular(n: usize, seed: u64, num_factors: usize) -> FactoredTN {
    assert!(n >= 1, "matrix order must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| -> Vec<BidiagonalFactor> {
        if n == 1 {
            return Vec::new();
        }
        (0..num_factors)
            .map(|_| BidiagonalFactor {
                index: rng.random_range(1..n),
                param: small_positive(rng),
            })
            .collect()
    };
    let lower = draw(&mut rng);
    let upper = draw(&mut rng);
    let d = (0..n).map(|_| small_positive(&mut rng)).collect();
    FactoredTN { n, lower, upper, d }
}

/// Exact scalars that the positive-definite factory can sample.
pub trait PdScalar: Scalar {
    const MODE: &'static str;
    fn sample(rng: &mut ChaCha8Rng) -> Self;
}

impl PdScalar for Rational {
    const MODE: &'static str = "rational-real";
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        small_signed(rng)
    }
}

impl PdScalar for GaussianRational {
    const MODE: &'static str = "gaussian-rational";
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        gaussian(small_signed(rng), small_signed(rng))
    }
}

/// An unstructured matrix with entries drawn as in the factories; no
/// certificate attached.
pub fn random_matrix<S: PdScalar>(n: usize, seed: u64) -> Matrix<S> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_fn(n, |_, _| S::sample(&mut rng))
}

/// `A = conj(U)^t D U` with `U` unit upper triangular and `D >= 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "S: Scalar", try_from = "RawPd<S>")]
pub struct FactoredPD<S> {
    u: Matrix<S>,
    #[serde(with = "rational_text::vec")]
    d: Vec<Rational>,
}

#[derive(Deserialize)]
#[serde(bound = "S: Scalar")]
struct RawPd<S> {
    u: Matrix<S>,
    #[serde(with = "rational_text::vec")]
    d: Vec<Rational>,
}

impl<S: Scalar> TryFrom<RawPd<S>> for FactoredPD<S> {
    type Error = Error;
    fn try_from(raw: RawPd<S>) -> Result<Self> {
        FactoredPD::new(raw.u, raw.d)
    }
}

impl<S: Scalar> FactoredPD<S> {
    pub fn new(u: Matrix<S>, d: Vec<Rational>) -> Result<Self> {
        let n = u.n();
        if d.len() != n {
            return Err(Error::SizeMismatch {
                context: "diagonal length",
                expected: n,
                found: d.len(),
            });
        }
        for i in 0..n {
            for j in 0..=i {
                let want = if i == j { S::one() } else { S::zero() };
                if u[(i, j)] != want {
                    return Err(Error::Parse(format!(
                        "U is not unit upper triangular at ({i},{j})"
                    )));
                }
            }
        }
        if let Some(x) = d.iter().find(|x| x.is_negative()) {
            return Err(Error::NonPositiveParameter(format!("diagonal entry {x}")));
        }
        Ok(FactoredPD { u, d })
    }

    pub fn n(&self) -> usize {
        self.u.n()
    }

    pub fn unipotent(&self) -> &Matrix<S> {
        &self.u
    }

    pub fn diagonal(&self) -> &[Rational] {
        &self.d
    }

    pub fn is_definite(&self) -> bool {
        self.d.iter().all(|x| !x.is_zero())
    }

    pub fn matrix(&self) -> Matrix<S> {
        let d: Vec<S> = self.d.iter().map(S::from_rational).collect();
        &(&self.u.conj_transpose() * &Matrix::diagonal(&d)) * &self.u
    }

    pub fn determinant(&self) -> Rational {
        self.d.iter().fold(Rational::one(), |acc, x| acc * x)
    }

    pub fn with_zero_diagonal(mut self, positions: &[usize]) -> Self {
        for &i in positions {
            self.d[i] = Rational::zero();
        }
        self
    }
}

impl<S: PdScalar> FactoredPD<S> {
    pub fn random(n: usize, seed: u64) -> Self {
        assert!(n >= 1, "matrix order must be positive");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = Matrix::from_fn(n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => S::sample(&mut rng),
            std::cmp::Ordering::Equal => S::one(),
            std::cmp::Ordering::Greater => S::zero(),
        });
        let d = (0..n).map(|_| small_positive(&mut rng)).collect();
        FactoredPD { u, d }
    }
}

pub fn random_pd_real(n: usize, seed: u64) -> FactoredPD<Rational> {
    FactoredPD::random(n, seed)
}

pub fn random_pd_gaussian(n: usize, seed: u64) -> FactoredPD<GaussianRational> {
    FactoredPD::random(n, seed)
}

/// A certified instance of either class, tagged for JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum Certificate {
    PdReal(FactoredPD<Rational>),
    PdGaussian(FactoredPD<GaussianRational>),
    Tn(FactoredTN),
}

impl Certificate {
    pub fn n(&self) -> usize {
        match self {
            Self::PdReal(f) => f.n(),
            Self::PdGaussian(f) => f.n(),
            Self::Tn(f) => f.n(),
        }
    }

    pub fn determinant(&self) -> Rational {
        match self {
            Self::PdReal(f) => f.determinant(),
            Self::PdGaussian(f) => f.determinant(),
            Self::Tn(f) => f.determinant(),
        }
    }

    /// Positive definite or nonsingular totally nonnegative.
    pub fn is_nonsingular(&self) -> bool {
        match self {
            Self::PdReal(f) => f.is_definite(),
            Self::PdGaussian(f) => f.is_definite(),
            Self::Tn(f) => f.is_nonsingular(),
        }
    }

    pub fn is_tn(&self) -> bool {
        matches!(self, Self::Tn(_))
    }

    pub fn matrix(&self) -> Matrix<GaussianRational> {
        match self {
            Self::PdReal(f) => f.matrix().map(|x| gaussian(x.clone(), Rational::zero())),
            Self::PdGaussian(f) => f.matrix(),
            Self::Tn(f) => f.matrix().map(|x| gaussian(x.clone(), Rational::zero())),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificates serialize")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Outcome of the brute-force minor test.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum TnVerdict {
    TotallyNonnegative,
    /// A negative minor; rows and columns are 1-based.
    NegativeMinor {
        rows: Vec<usize>,
        cols: Vec<usize>,
        value: String,
    },
}

impl TnVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, Self::TotallyNonnegative)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn real_part<S: Scalar>(x: &S) -> Result<Rational> {
    x.exact_real()
        .ok_or_else(|| Error::NotReal(format!("{x:?}")))
}

/// Checks every minor, smallest order first. Exact, real scalars only.
pub fn is_totally_nonnegative<S: Scalar>(a: &Matrix<S>) -> Result<TnVerdict> {
    if !S::EXACT {
        return Err(Error::InexactScalar);
    }
    let n = a.n();
    if n > MAX_TN_CHECK {
        return Err(Error::ResourceGuard(format!(
            "minor enumeration limited to n <= {MAX_TN_CHECK}, got {n}"
        )));
    }
    let real = Matrix::new(
        a.rows()
            .iter()
            .map(|r| r.iter().map(real_part).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?,
    )?;
    for k in 1..=n {
        let sets = subsets(n, k);
        for rows in &sets {
            for cols in &sets {
                let minor = real.select(rows, cols).determinant_elimination();
                if minor.is_negative() {
                    return Ok(TnVerdict::NegativeMinor {
                        rows: rows.iter().map(|i| i + 1).collect(),
                        cols: cols.iter().map(|j| j + 1).collect(),
                        value: minor.to_string(),
                    });
                }
            }
        }
    }
    Ok(TnVerdict::TotallyNonnegative)
}

/// Sylvester's criterion: every leading principal minor is positive.
pub fn is_positive_definite<S: Scalar>(a: &Matrix<S>) -> Result<bool> {
    let tol = if S::EXACT { 0.0 } else { 1e-12 };
    if !a.is_hermitian(tol) {
        return Err(Error::NotHermitian);
    }
    for k in 1..=a.n() {
        let idx: Vec<usize> = (0..k).collect();
        let minor = a.select(&idx, &idx).determinant_elimination();
        let positive = match minor.exact_real() {
            Some(r) => r.is_positive(),
            None => minor.to_complex64().re > tol,
        };
        if !positive {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn bidiagonal_examples() {
        let t = ratio(3, 2);
        let up = elementary_bidiagonal(2, 1, &t, Side::Upper).unwrap();
        assert_eq!(up.rows(), vec![vec![ratio(1, 1), t.clone()], vec![ratio(0, 1), ratio(1, 1)]]);
        let low = elementary_bidiagonal(3, 2, &t, Side::Lower).unwrap();
        assert_eq!(low[(2, 1)], t);
        assert!(matches!(
            elementary_bidiagonal(2, 1, &ratio(0, 1), Side::Upper),
            Err(Error::NonPositiveParameter(_))
        ));
        assert!(elementary_bidiagonal(2, 2, &t, Side::Upper).is_err());
    }

    #[test]
    fn whitney_product_2x2() {
        let (s, t, d1, d2) = (ratio(2, 3), ratio(5, 7), ratio(3, 1), ratio(1, 4));
        let f = FactoredTN::new(
            2,
            vec![BidiagonalFactor { index: 1, param: s.clone() }],
            vec![BidiagonalFactor { index: 1, param: t.clone() }],
            vec![d1.clone(), d2.clone()],
        )
        .unwrap();
        let one = ratio(1, 1);
        let expected = Matrix::new(vec![
            vec![d1.clone(), t.clone() * d2.clone()],
            vec![s.clone() * d1.clone(), (one + s * t) * d2.clone()],
        ])
        .unwrap();
        assert_eq!(f.matrix(), expected);
        assert_eq!(f.matrix().determinant_elimination(), d1 * d2);
    }

    #[test]
    fn random_tn_instances() {
        let id = random_tn_nonsingular(3, 0, 0).with_zero_diagonal(&[]);
        assert_eq!(id.lower().len(), 0);
        for seed in 0..20 {
            let f = random_tn_nonsingular(3 + (seed as usize % 2), seed, 4);
            let a = f.matrix();
            assert!(is_totally_nonnegative(&a).unwrap().holds(), "seed {seed}");
            assert_eq!(a.determinant_elimination(), f.determinant());
        }
        let f = random_tn_nonsingular(1, 3, 5);
        assert!(f.lower().is_empty() && f.upper().is_empty());
    }

    #[test]
    fn tn_products_stay_tn() {
        for seed in 0..6 {
            let a = random_tn_nonsingular(4, seed, 3).matrix();
            let b = random_tn_nonsingular(4, seed + 100, 3).with_zero_diagonal(&[1]).matrix();
            assert!(is_totally_nonnegative(&(&a * &b)).unwrap().holds());
        }
    }

    #[test]
    fn tn_counterexample() {
        let swap = Matrix::new(vec![vec![ratio(0, 1), ratio(1, 1)], vec![ratio(1, 1), ratio(0, 1)]]).unwrap();
        match is_totally_nonnegative(&swap).unwrap() {
            TnVerdict::NegativeMinor { rows, cols, value } => {
                assert_eq!((rows, cols, value.as_str()), (vec![1, 2], vec![1, 2], "-1"));
            }
            other => panic!("{other:?}"),
        }
        assert!(is_totally_nonnegative(&Matrix::<Rational>::identity(4)).unwrap().holds());
        assert!(matches!(
            is_totally_nonnegative(&Matrix::<f64>::identity(2)),
            Err(Error::InexactScalar)
        ));
        assert!(matches!(
            is_totally_nonnegative(&Matrix::<Rational>::identity(7)),
            Err(Error::ResourceGuard(_))
        ));
    }

    #[test]
    fn pd_expansion_2x2() {
        let (u, d1, d2) = (ratio(-3, 2), ratio(2, 1), ratio(5, 3));
        let f = FactoredPD::new(
            Matrix::new(vec![vec![ratio(1, 1), u.clone()], vec![ratio(0, 1), ratio(1, 1)]]).unwrap(),
            vec![d1.clone(), d2.clone()],
        )
        .unwrap();
        let expected = Matrix::new(vec![
            vec![d1.clone(), d1.clone() * u.clone()],
            vec![d1.clone() * u.clone(), d1 * u.clone() * u + d2],
        ])
        .unwrap();
        assert_eq!(f.matrix(), expected);
    }

    #[test]
    fn random_pd_instances() {
        for seed in 0..20 {
            let real = random_pd_real(4, seed);
            let a = real.matrix();
            assert!(a.is_hermitian(0.0));
            assert!(is_positive_definite(&a).unwrap());
            assert_eq!(a.determinant_elimination(), real.determinant());
            let g = random_pd_gaussian(3, seed);
            let b = g.matrix();
            assert!(b.is_hermitian(0.0));
            assert!(is_positive_definite(&b).unwrap());
            assert_eq!(b.determinant_elimination().exact_real(), Some(g.determinant()));
            for k in 1..=3 {
                let idx: Vec<usize> = (0..k).collect();
                let minor = b.select(&idx, &idx).determinant_elimination();
                let want = g.diagonal()[..k].iter().fold(ratio(1, 1), |acc, x| acc * x);
                assert_eq!(minor.exact_real(), Some(want));
            }
        }
    }

    #[test]
    fn definiteness_examples() {
        let diag = Matrix::diagonal(&[ratio(1, 1), ratio(2, 1), ratio(3, 1)]);
        assert!(is_positive_definite(&diag).unwrap());
        let indefinite = Matrix::new(vec![vec![ratio(1, 1), ratio(2, 1)], vec![ratio(2, 1), ratio(1, 1)]]).unwrap();
        assert!(!is_positive_definite(&indefinite).unwrap());
        let skew = Matrix::new(vec![vec![ratio(1, 1), ratio(2, 1)], vec![ratio(0, 1), ratio(1, 1)]]).unwrap();
        assert!(matches!(is_positive_definite(&skew), Err(Error::NotHermitian)));
        let singular = random_pd_real(3, 4).with_zero_diagonal(&[2]);
        assert!(!singular.is_definite());
        assert!(!is_positive_definite(&singular.matrix()).unwrap());
    }

    #[test]
    fn certificates_round_trip() {
        let certs = vec![
            Certificate::PdReal(random_pd_real(3, 1)),
            Certificate::PdGaussian(random_pd_gaussian(3, 2).with_zero_diagonal(&[0])),
            Certificate::Tn(random_tn_nonsingular(4, 3, 5)),
        ];
        for c in certs {
            let text = serde_json::to_string(&c).unwrap();
            let back: Certificate = serde_json::from_str(&text).unwrap();
            assert_eq!(back, c);
            assert_eq!(back.matrix(), c.matrix());
        }
        let bad = serde_json::json!({"class": "tn", "n": 2, "lower": [{"index": 1, "param": "-1"}], "upper": [], "d": ["1", "1"]});
        assert!(Certificate::from_json(&bad).is_err());
    }

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_tn_nonsingular(4, 9, 6), random_tn_nonsingular(4, 9, 6));
        assert_eq!(random_pd_gaussian(4, 9), random_pd_gaussian(4, 9));
        assert_ne!(random_pd_real(4, 9), random_pd_real(4, 10));
    }
}
