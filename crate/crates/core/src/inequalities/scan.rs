use std::collections::BTreeMap;

use num_traits::Signed;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{criterion_sweep, orbit_sweep, schur_sweep, CheckKind, CheckRecord, OrbitWeights, Verdict};
use crate::error::{Error, Result};
use crate::factories::{random_pd_gaussian, random_pd_real, random_tn_nonsingular, Certificate};
use crate::scalar::{rational_text, Rational};
use crate::tensor::MAX_TENSOR_DIM;

/// Largest tensor degree a scan accepts.
pub const MAX_SCAN_DEGREE: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixClass {
    /// Positive definite; even-numbered instances are real, odd ones
    /// Gaussian-rational.
    Pd,
    /// As `Pd`, with one diagonal factor zeroed on even-numbered instances.
    Psd,
    /// Totally nonnegative; every fourth instance has a zeroed diagonal factor.
    Tn,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    /// `(n, m)` pairs.
    pub sizes: Vec<(usize, usize)>,
    /// Instances per size and class.
    pub count: usize,
    pub seed: u64,
    pub classes: Vec<MatrixClass>,
    pub checks: Vec<CheckKind>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub index: usize,
    pub class: MatrixClass,
    pub n: usize,
    pub m: usize,
    pub seed: u64,
    pub certificate: Certificate,
    pub records: Vec<CheckRecord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub instance: usize,
    pub record: CheckRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub check: CheckKind,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    #[serde(with = "rational_text::option")]
    pub min_margin: Option<Rational>,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub config: ScanConfig,
    pub instances: Vec<InstanceReport>,
    pub summary: Vec<CheckSummary>,
}

impl ScanReport {
    pub fn violations(&self) -> usize {
        self.summary.iter().map(|s| s.failed).sum()
    }
}

fn guard(n: usize, m: usize) -> Result<()> {
    let dim = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if m > MAX_SCAN_DEGREE || dim > MAX_TENSOR_DIM as u128 {
        return Err(Error::ResourceGuard(format!(
            "scan limited to m <= {MAX_SCAN_DEGREE} and n^m <= {MAX_TENSOR_DIM}; got n = {n}, m = {m}"
        )));
    }
    if n == 0 {
        return Err(Error::ResourceGuard("matrix order must be positive".into()));
    }
    Ok(())
}

/// The `k`-th instance of a class; `seed` drives both parameters and the
/// choice of zeroed diagonal entry.
pub fn make_instance(class: MatrixClass, n: usize, k: usize, seed: u64) -> Certificate {
    let zero_at = ChaCha8Rng::seed_from_u64(seed ^ 0x5a5a_5a5a).random_range(0..n);
    match class {
        MatrixClass::Pd | MatrixClass::Psd => {
            let zeros: &[usize] = if class == MatrixClass::Psd && k.is_multiple_of(2) { &[zero_at] } else { &[] };
            if k.is_multiple_of(2) {
                Certificate::PdReal(random_pd_real(n, seed).with_zero_diagonal(zeros))
            } else {
                Certificate::PdGaussian(random_pd_gaussian(n, seed).with_zero_diagonal(zeros))
            }
        }
        MatrixClass::Tn => {
            let zeros: &[usize] = if k % 4 == 3 { &[zero_at] } else { &[] };
            Certificate::Tn(random_tn_nonsingular(n, seed, 2 * n).with_zero_diagonal(zeros))
        }
    }
}

fn run_checks(cert: &Certificate, m: usize, checks: &[CheckKind]) -> Result<Vec<CheckRecord>> {
    let mut records = Vec::new();
    if checks.contains(&CheckKind::Criterion) {
        records.extend(criterion_sweep(cert, m)?);
    }
    if checks.contains(&CheckKind::Schur) {
        records.extend(schur_sweep(cert)?);
    }
    if checks.contains(&CheckKind::Orbit) || checks.contains(&CheckKind::OrbitHomogeneous) {
        records.extend(
            orbit_sweep(cert, m, OrbitWeights::Representatives)?
                .into_iter()
                .filter(|r| checks.contains(&r.check)),
        );
    }
    Ok(records)
}

/// Runs every requested check on `count` instances per size and class.
/// Instance seeds come from one stream seeded by `config.seed`, so the
/// report depends only on the configuration.
pub fn scan(config: &ScanConfig) -> Result<ScanReport> {
    for &(n, m) in &config.sizes {
        guard(n, m)?;
    }
    let mut master = ChaCha8Rng::seed_from_u64(config.seed);
    let mut jobs = Vec::new();
    for &(n, m) in &config.sizes {
        for &class in &config.classes {
            for k in 0..config.count {
                jobs.push((class, n, m, k, master.next_u64()));
            }
        }
    }
    let instances: Vec<InstanceReport> = jobs
        .par_iter()
        .enumerate()
        .map(|(index, &(class, n, m, k, seed))| {
            let certificate = make_instance(class, n, k, seed);
            let records = run_checks(&certificate, m, &config.checks)?;
            Ok(InstanceReport {
                index,
                class,
                n,
                m,
                seed,
                certificate,
                records,
            })
        })
        .collect::<Result<_>>()?;
    let summary = summarize(&instances);
    Ok(ScanReport {
        config: config.clone(),
        instances,
        summary,
    })
}

fn summarize(instances: &[InstanceReport]) -> Vec<CheckSummary> {
    let mut by_kind: BTreeMap<CheckKind, CheckSummary> = BTreeMap::new();
    for inst in instances {
        for rec in &inst.records {
            let s = by_kind.entry(rec.check).or_insert_with(|| CheckSummary {
                check: rec.check,
                passed: 0,
                failed: 0,
                skipped: 0,
                min_margin: None,
                counterexamples: Vec::new(),
            });
            match rec.verdict {
                Verdict::Pass => s.passed += 1,
                Verdict::Fail => {
                    s.failed += 1;
                    s.counterexamples.push(Counterexample {
                        instance: inst.index,
                        record: rec.clone(),
                    });
                }
                Verdict::Skipped(_) => s.skipped += 1,
            }
            // The criterion's margin is the immanant itself; only the
            // inequalities have a meaningful minimum.
            if rec.check != CheckKind::Criterion && !matches!(rec.verdict, Verdict::Skipped(_)) {
                let smaller = s.min_margin.as_ref().is_none_or(|cur| rec.margin < *cur);
                if smaller {
                    s.min_margin = Some(rec.margin.clone());
                }
            }
        }
    }
    by_kind.into_values().collect()
}

impl CheckSummary {
    pub fn min_margin_is_negative(&self) -> bool {
        self.min_margin.as_ref().is_some_and(Signed::is_negative)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(sizes: Vec<(usize, usize)>, checks: Vec<CheckKind>) -> ScanConfig {
        ScanConfig {
            sizes,
            count: 3,
            seed: 42,
            classes: vec![MatrixClass::Pd, MatrixClass::Psd, MatrixClass::Tn],
            checks,
        }
    }

    #[test]
    fn empty_config() {
        let report = scan(&config(vec![], vec![CheckKind::Schur])).unwrap();
        assert!(report.instances.is_empty() && report.summary.is_empty());
    }

    #[test]
    fn desk_scale_scan_is_clean_and_reproducible() {
        let cfg = config(
            vec![(2, 2), (3, 3)],
            vec![CheckKind::Criterion, CheckKind::Schur, CheckKind::Orbit, CheckKind::OrbitHomogeneous],
        );
        let a = scan(&cfg).unwrap();
        assert_eq!(a.violations(), 0, "{:?}", a.summary);
        assert_eq!(a, scan(&cfg).unwrap());
        let criterion = a.summary.iter().find(|s| s.check == CheckKind::Criterion).unwrap();
        assert!(criterion.skipped > 0);
    }

    #[test]
    fn homogeneous_orbit_form_holds_off_diagonal() {
        let cfg = config(vec![(3, 2), (2, 4)], vec![CheckKind::OrbitHomogeneous]);
        let report = scan(&cfg).unwrap();
        assert_eq!(report.violations(), 0);
        assert!(report.summary[0].passed > 0);
    }

    #[test]
    fn resource_guard() {
        assert!(matches!(scan(&config(vec![(2, 9)], vec![])), Err(Error::ResourceGuard(_))));
        assert!(matches!(scan(&config(vec![(11, 5)], vec![])), Err(Error::ResourceGuard(_))));
    }
}
