//! Executable forms of the positivity criterion for immanants of generalized
//! principal submatrices, Schur's inequality `f_lambda det(A) <= Imm_lambda(A)`,
//! and the Weyl-orbit inequality, together with a seeded scanning harness.
//!
//! Every value here is exact. Inputs are factory certificates, so the class
//! of a matrix is known rather than tested.

mod scan;

pub use scan::{make_instance, scan, CheckSummary, Counterexample, InstanceReport, MatrixClass, ScanConfig, ScanReport, MAX_SCAN_DEGREE};

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    dominates, enumerate_partitions, enumerate_weak_compositions, hook_data, kostka, multinomial,
    multiset_from_weight, sort_to_partition, Partition, WeakComposition,
};
use crate::error::{check_size, Error, Result};
use crate::factories::Certificate;
use crate::immanant::{generalized_submatrix, immanants_all_shapes, Matrix};
use crate::scalar::{rational_text, GaussianRational, Rational, Scalar};
use crate::symmetric_group::next_permutation;
use crate::tensor::trace_formula_rhs_exact;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    /// `Imm_lambda(A_I) > 0` iff `K_{lambda,mu} != 0`.
    Criterion,
    /// `Imm_lambda(A) - f_lambda det(A) >= 0`.
    Schur,
    /// `sum_{nu in O_mu} Imm_lambda(A_{I_nu})/m(I) >= |O_mu| K_{lambda,mu} det(A)`.
    Orbit,
    /// The orbit inequality with matched degrees:
    /// `LHS^n >= (|O_mu| K_{lambda,mu})^n det(A)^m`.
    OrbitHomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// The instance lies outside the hypotheses of the check.
    Skipped(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: CheckKind,
    pub lambda: Partition,
    pub mu: Option<WeakComposition>,
    #[serde(with = "rational_text")]
    pub lhs: Rational,
    #[serde(with = "rational_text")]
    pub rhs: Rational,
    /// `lhs - rhs` for inequalities; `lhs` itself for the criterion.
    #[serde(with = "rational_text")]
    pub margin: Rational,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

/// A single check together with the instance it was run on.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub instance: Certificate,
    #[serde(flatten)]
    pub record: CheckRecord,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityPrediction {
    pub kostka: u64,
    pub dominates: bool,
}

impl PositivityPrediction {
    pub fn positive(&self) -> bool {
        self.kostka != 0
    }

    /// `K_{lambda,mu} != 0` exactly when `lambda` dominates the sorted weight.
    pub fn consistent(&self) -> bool {
        self.positive() == self.dominates
    }
}

pub fn positivity_prediction(lambda: &Partition, mu: &WeakComposition) -> Result<PositivityPrediction> {
    check_size("weight size", lambda.size(), mu.size())?;
    Ok(PositivityPrediction {
        kostka: kostka(lambda, mu)?,
        dominates: dominates(lambda, &sort_to_partition(mu))?,
    })
}

fn real(x: &GaussianRational) -> Result<Rational> {
    x.exact_real().ok_or_else(|| Error::NotReal(crate::scalar::format_gaussian(x)))
}

/// `Imm_lambda(A_I)` for every `lambda ⊢ m`, where `I` has weight `mu`.
/// Immanants of Hermitian and of real matrices are real.
fn submatrix_immanants(a: &Matrix<GaussianRational>, mu: &WeakComposition) -> Result<BTreeMap<Partition, Rational>> {
    check_size("weight length", a.n(), mu.len())?;
    let sub = generalized_submatrix(a, &multiset_from_weight(mu))?;
    immanants_all_shapes(&sub)
        .iter()
        .map(|(lambda, v)| Ok((lambda.clone(), real(v)?)))
        .collect()
}

fn criterion_record(lambda: &Partition, mu: &WeakComposition, imm: Rational, nonsingular: bool) -> Result<CheckRecord> {
    let prediction = positivity_prediction(lambda, mu)?;
    let (verdict, note) = if !nonsingular {
        (
            Verdict::Skipped("requires a positive definite or nonsingular totally nonnegative matrix".into()),
            None,
        )
    } else if !prediction.consistent() {
        (Verdict::Fail, Some("Kostka number and dominance disagree".into()))
    } else if prediction.positive() == imm.is_positive() && (prediction.positive() || imm.is_zero()) {
        (Verdict::Pass, None)
    } else {
        (Verdict::Fail, None)
    };
    Ok(CheckRecord {
        check: CheckKind::Criterion,
        lambda: lambda.clone(),
        mu: Some(mu.clone()),
        lhs: imm.clone(),
        rhs: Rational::from_integer(prediction.kostka.into()),
        margin: imm,
        verdict,
        note,
    })
}

/// Compares the sign of `Imm_lambda(A_I)` with `K_{lambda,mu} != 0`. The
/// `rhs` field of the record holds the Kostka number.
pub fn check_criterion(cert: &Certificate, lambda: &Partition, mu: &WeakComposition) -> Result<CheckReport> {
    check_size("weight size", lambda.size(), mu.size())?;
    let imm = submatrix_immanants(&cert.matrix(), mu)?
        .remove(lambda)
        .expect("every partition of m has an immanant");
    Ok(CheckReport {
        instance: cert.clone(),
        record: criterion_record(lambda, mu, imm, cert.is_nonsingular())?,
    })
}

/// The criterion for every `lambda ⊢ m` and every weight `mu` of length `n`.
pub fn criterion_sweep(cert: &Certificate, m: usize) -> Result<Vec<CheckRecord>> {
    let a = cert.matrix();
    let mut out = Vec::new();
    for mu in enumerate_weak_compositions(m, a.n()) {
        for (lambda, imm) in submatrix_immanants(&a, &mu)? {
            out.push(criterion_record(&lambda, &mu, imm, cert.is_nonsingular())?);
        }
    }
    Ok(out)
}

fn determinant(a: &Matrix<GaussianRational>) -> Result<Rational> {
    real(&a.determinant_elimination())
}

/// `Imm_lambda(A) - f_lambda det(A)` for `lambda ⊢ n`.
pub fn schur_inequality_margin(cert: &Certificate, lambda: &Partition) -> Result<Rational> {
    Ok(schur_record(cert, lambda)?.margin)
}

fn schur_record(cert: &Certificate, lambda: &Partition) -> Result<CheckRecord> {
    let a = cert.matrix();
    check_size("shape size", a.n(), lambda.size())?;
    let imm = real(&crate::immanant::immanant(&a, lambda)?)?;
    let rhs = Rational::from_integer(hook_data(lambda).dimension.into()) * determinant(&a)?;
    Ok(inequality_record(CheckKind::Schur, lambda, None, imm, rhs))
}

pub fn check_schur(cert: &Certificate, lambda: &Partition) -> Result<CheckReport> {
    Ok(CheckReport {
        instance: cert.clone(),
        record: schur_record(cert, lambda)?,
    })
}

pub fn schur_sweep(cert: &Certificate) -> Result<Vec<CheckRecord>> {
    enumerate_partitions(cert.n(), None)
        .iter()
        .map(|lambda| schur_record(cert, lambda))
        .collect()
}

fn inequality_record(
    check: CheckKind,
    lambda: &Partition,
    mu: Option<&WeakComposition>,
    lhs: Rational,
    rhs: Rational,
) -> CheckRecord {
    let margin = lhs.clone() - rhs.clone();
    CheckRecord {
        check,
        lambda: lambda.clone(),
        mu: mu.cloned(),
        verdict: if margin.is_negative() { Verdict::Fail } else { Verdict::Pass },
        lhs,
        rhs,
        margin,
        note: None,
    }
}

/// The distinct rearrangements of a weight, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylOrbit {
    pub base: WeakComposition,
    pub members: Vec<WeakComposition>,
}

impl WeylOrbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

pub fn weyl_orbit(mu: &WeakComposition) -> WeylOrbit {
    let mut current = mu.entries().to_vec();
    current.sort_unstable();
    let mut members = vec![WeakComposition::new(current.clone())];
    while next_permutation(&mut current) {
        members.push(WeakComposition::new(current.clone()));
    }
    WeylOrbit {
        base: mu.clone(),
        members,
    }
}

/// `|O_mu| = n! / prod_k (number of entries equal to k)!`.
pub fn orbit_size(mu: &WeakComposition) -> u64 {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &x in mu.entries() {
        *counts.entry(x).or_default() += 1;
    }
    multinomial(&WeakComposition::new(counts.into_values().collect()))
}

/// How the orbit sum `sum_nu tr(P_nu A P_nu |_{U^lambda})` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitRoute {
    /// `sum_nu Imm_lambda(A_{I_nu}) / m(I)`.
    Immanant,
    /// The exact weight-space trace on the tensor space.
    Trace,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrbitSides {
    pub lhs: Rational,
    pub orbit_size: u64,
    pub kostka: u64,
    pub det: Rational,
}

pub fn orbit_sides(cert: &Certificate, lambda: &Partition, mu: &WeakComposition, route: OrbitRoute) -> Result<OrbitSides> {
    let a = cert.matrix();
    check_size("weight length", a.n(), mu.len())?;
    check_size("weight size", lambda.size(), mu.size())?;
    let orbit = weyl_orbit(mu);
    let mut lhs = Rational::zero();
    for nu in &orbit.members {
        lhs += match route {
            OrbitRoute::Immanant => {
                let i = multiset_from_weight(nu);
                let imm = real(&crate::immanant::immanant_of_submatrix(&a, lambda, &i)?)?;
                imm / Rational::from_integer(i.m_of_i().into())
            }
            OrbitRoute::Trace => real(&trace_formula_rhs_exact(&a, lambda, nu)?)?,
        };
    }
    Ok(OrbitSides {
        lhs,
        orbit_size: orbit.len() as u64,
        kostka: kostka(lambda, mu)?,
        det: determinant(&a)?,
    })
}

fn orbit_records_from(
    lambda: &Partition,
    mu: &WeakComposition,
    lhs: Rational,
    kostka: u64,
    det: &Rational,
) -> [CheckRecord; 2] {
    let (n, m) = (mu.len(), mu.size());
    let coeff = Rational::from_integer((orbit_size(mu) * kostka).into());
    let stated = inequality_record(CheckKind::Orbit, lambda, Some(mu), lhs.clone(), coeff.clone() * det.clone());
    let homogeneous = inequality_record(
        CheckKind::OrbitHomogeneous,
        lambda,
        Some(mu),
        num_traits::pow(lhs, n),
        num_traits::pow(coeff, n) * num_traits::pow(det.clone(), m),
    );
    [stated, homogeneous]
}

fn orbit_records(cert: &Certificate, lambda: &Partition, mu: &WeakComposition, route: OrbitRoute) -> Result<[CheckRecord; 2]> {
    let sides = orbit_sides(cert, lambda, mu, route)?;
    Ok(orbit_records_from(lambda, mu, sides.lhs, sides.kostka, &sides.det))
}

/// The orbit inequality as stated, with `rhs = |O_mu| K_{lambda,mu} det(A)`.
pub fn orbit_inequality_check(cert: &Certificate, lambda: &Partition, mu: &WeakComposition) -> Result<CheckReport> {
    let [stated, _] = orbit_records(cert, lambda, mu, OrbitRoute::Immanant)?;
    Ok(CheckReport {
        instance: cert.clone(),
        record: stated,
    })
}

/// The orbit inequality with both sides raised to degree `n m`.
pub fn orbit_inequality_homogeneous(cert: &Certificate, lambda: &Partition, mu: &WeakComposition) -> Result<CheckReport> {
    let [_, homogeneous] = orbit_records(cert, lambda, mu, OrbitRoute::Immanant)?;
    Ok(CheckReport {
        instance: cert.clone(),
        record: homogeneous,
    })
}

/// Which weights an orbit sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrbitWeights {
    /// The weakly decreasing member of each orbit.
    Representatives,
    /// Every weight; each orbit is then visited once per member.
    All,
}

/// Both orbit forms for every `lambda ⊢ m`. Immanants of each `A_{I_nu}`
/// are computed once and shared between orbits.
pub fn orbit_sweep(cert: &Certificate, m: usize, weights: OrbitWeights) -> Result<Vec<CheckRecord>> {
    let a = cert.matrix();
    let n = a.n();
    let det = determinant(&a)?;
    let all = enumerate_weak_compositions(m, n);
    let mut table: BTreeMap<WeakComposition, BTreeMap<Partition, Rational>> = BTreeMap::new();
    for nu in &all {
        let scale = Rational::from_integer(multiset_from_weight(nu).m_of_i().into());
        let imms = submatrix_immanants(&a, nu)?
            .into_iter()
            .map(|(lambda, v)| (lambda, v / scale.clone()))
            .collect();
        table.insert(nu.clone(), imms);
    }
    let visited: Vec<WeakComposition> = match weights {
        OrbitWeights::All => all,
        OrbitWeights::Representatives => enumerate_partitions(m, Some(n))
            .iter()
            .map(|kappa| WeakComposition::new((0..n).map(|i| kappa.part(i)).collect()))
            .collect(),
    };
    let mut out = Vec::new();
    for mu in &visited {
        let orbit = weyl_orbit(mu);
        for lambda in enumerate_partitions(m, None) {
            let lhs = orbit
                .members
                .iter()
                .fold(Rational::zero(), |acc, nu| acc + table[nu][&lambda].clone());
            out.extend(orbit_records_from(&lambda, mu, lhs, kostka(&lambda, mu)?, &det));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factories::{random_pd_gaussian, random_pd_real, random_tn_nonsingular};
    use crate::scalar::ratio;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn w(v: &[usize]) -> WeakComposition {
        WeakComposition::new(v.to_vec())
    }

    #[test]
    fn prediction_examples() {
        assert!(positivity_prediction(&p(&[2]), &w(&[1, 1])).unwrap().positive());
        assert!(!positivity_prediction(&p(&[1, 1]), &w(&[2, 0])).unwrap().positive());
        let pr = positivity_prediction(&p(&[2, 1]), &w(&[3, 0, 0])).unwrap();
        assert!(!pr.positive() && pr.consistent());
        assert!(positivity_prediction(&p(&[2, 1]), &w(&[1, 1])).is_err());
    }

    #[test]
    fn criterion_examples() {
        let cert = Certificate::PdReal(random_pd_real(2, 3));
        let zero = check_criterion(&cert, &p(&[1, 1]), &w(&[2, 0])).unwrap();
        assert_eq!(zero.record.lhs, ratio(0, 1));
        assert_eq!(zero.record.verdict, Verdict::Pass);
        let a = cert.matrix();
        let pos = check_criterion(&cert, &p(&[2]), &w(&[1, 1])).unwrap();
        let expected = real(&(a[(0, 0)].clone() * a[(1, 1)].clone() + a[(0, 1)].clone() * a[(1, 0)].clone())).unwrap();
        assert_eq!(pos.record.lhs, expected);
        assert_eq!(pos.record.verdict, Verdict::Pass);
        let tn = Certificate::Tn(random_tn_nonsingular(3, 8, 4));
        for rec in criterion_sweep(&tn, 3).unwrap() {
            assert_eq!(rec.verdict, Verdict::Pass, "{rec:?}");
        }
    }

    #[test]
    fn singular_instances_are_skipped() {
        let cert = Certificate::PdGaussian(random_pd_gaussian(3, 1).with_zero_diagonal(&[1]));
        let rec = check_criterion(&cert, &p(&[3]), &w(&[1, 1, 1])).unwrap().record;
        assert!(matches!(rec.verdict, Verdict::Skipped(_)));
        for rec in schur_sweep(&cert).unwrap() {
            assert_eq!(rec.verdict, Verdict::Pass);
        }
    }

    #[test]
    fn schur_margins() {
        let cert = Certificate::Tn(random_tn_nonsingular(4, 2, 5));
        assert_eq!(schur_inequality_margin(&cert, &p(&[1, 1, 1, 1])).unwrap(), ratio(0, 1));
        let diag = Certificate::Tn(random_tn_nonsingular(3, 5, 0));
        for lambda in enumerate_partitions(3, None) {
            assert_eq!(schur_inequality_margin(&diag, &lambda).unwrap(), ratio(0, 1));
        }
        for rec in schur_sweep(&Certificate::PdGaussian(random_pd_gaussian(4, 6))).unwrap() {
            assert!(!rec.margin.is_negative());
        }
    }

    #[test]
    fn orbits() {
        assert_eq!(weyl_orbit(&w(&[1, 1, 1])).members, vec![w(&[1, 1, 1])]);
        assert_eq!(weyl_orbit(&w(&[2, 0])).members, vec![w(&[0, 2]), w(&[2, 0])]);
        assert_eq!(weyl_orbit(&w(&[2, 1, 0])).len(), 6);
        for mu in enumerate_weak_compositions(5, 4) {
            assert_eq!(weyl_orbit(&mu).len() as u64, orbit_size(&mu));
            let k: Vec<u64> = weyl_orbit(&mu)
                .members
                .iter()
                .map(|nu| kostka(&p(&[3, 2]), nu).unwrap())
                .collect();
            assert!(k.windows(2).all(|x| x[0] == x[1]));
        }
    }

    #[test]
    fn orbit_routes_agree() {
        let cert = Certificate::PdGaussian(random_pd_gaussian(2, 4));
        for lambda in enumerate_partitions(3, None) {
            for mu in [w(&[2, 1]), w(&[3, 0])] {
                let a = orbit_sides(&cert, &lambda, &mu, OrbitRoute::Immanant).unwrap();
                let b = orbit_sides(&cert, &lambda, &mu, OrbitRoute::Trace).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn orbit_reduces_to_schur_at_unit_weight() {
        let cert = Certificate::PdReal(random_pd_real(3, 9));
        for lambda in enumerate_partitions(3, None) {
            let orbit = orbit_inequality_check(&cert, &lambda, &w(&[1, 1, 1])).unwrap().record;
            let schur = check_schur(&cert, &lambda).unwrap().record;
            assert_eq!((orbit.lhs, orbit.rhs), (schur.lhs, schur.rhs));
        }
    }

    #[test]
    fn stated_orbit_form_is_not_homogeneous() {
        // A = 5 I_3, lambda = (2), mu = (2,0,0): the left side has degree 2,
        // the right side degree 3.
        let cert = Certificate::PdReal(
            crate::factories::FactoredPD::new(Matrix::identity(3), vec![ratio(5, 1); 3]).unwrap(),
        );
        let rec = orbit_inequality_check(&cert, &p(&[2]), &w(&[2, 0, 0])).unwrap().record;
        assert_eq!((rec.lhs.clone(), rec.rhs.clone()), (ratio(75, 1), ratio(375, 1)));
        assert_eq!(rec.verdict, Verdict::Fail);
        let hom = orbit_inequality_homogeneous(&cert, &p(&[2]), &w(&[2, 0, 0])).unwrap().record;
        assert_eq!(hom.verdict, Verdict::Pass);
        assert_eq!(hom.margin, ratio(0, 1));
    }

    #[test]
    fn diagonal_orbit_products() {
        // prod_{nu in O_mu} prod_{k in I_nu} d_k = (prod_i d_i)^{m |O_mu| / n}
        let d = [ratio(2, 1), ratio(3, 5), ratio(7, 4)];
        let det = d.iter().fold(ratio(1, 1), |a, x| a * x);
        for m in 1..=4 {
            for mu in enumerate_weak_compositions(m, 3) {
                let orbit = weyl_orbit(&mu);
                let prod = orbit.members.iter().fold(ratio(1, 1), |acc, nu| {
                    multiset_from_weight(nu)
                        .indices()
                        .iter()
                        .fold(acc, |a, &k| a * d[k - 1].clone())
                });
                let exponent = m * orbit.len();
                if exponent.is_multiple_of(3) {
                    assert_eq!(prod, num_traits::pow(det.clone(), exponent / 3));
                } else {
                    assert_eq!(num_traits::pow(prod, 3), num_traits::pow(det.clone(), exponent));
                }
            }
        }
    }
}
