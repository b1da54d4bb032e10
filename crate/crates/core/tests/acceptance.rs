//! Acceptance sweep. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Pass criterion numbers as arguments to run
//! a subset, e.g. `cargo test --test acceptance -- 1 5`.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use immanant::combinatorics::{
    enumerate_partitions, enumerate_ssyt, enumerate_syt, enumerate_weak_compositions, factorial,
    gt_from_ssyt, hook_data, kostka, multiset_from_weight, sort_to_partition, ssyt_from_gt, theta_mu,
    Partition, WeakComposition,
};
use immanant::factories::{random_pd_gaussian, random_pd_real, random_tn_nonsingular, Certificate};
use immanant::immanant::{immanant_of_submatrix, immanant_with, immanants_all_shapes, KernelStrategy, Matrix};
use immanant::inequalities::{
    criterion_sweep, make_instance, orbit_sweep, positivity_prediction, schur_sweep, CheckKind, CheckRecord,
    MatrixClass, OrbitWeights, Verdict,
};
use immanant::scalar::{gaussian, ratio};
use immanant::symmetric_group::{centralizer_order, character_table, class_size, Permutation};
use immanant::tensor::{
    check_contravariance, schur_weyl_norms, trace_formula_rhs_exact, trace_formula_terms, verify_capelli, Adjointable,
    TensorVector,
};
use immanant::{GaussianRational, Rational, Scalar, ToFloat};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TRACE_SIZES: [(usize, usize); 5] = [(2, 2), (2, 3), (3, 3), (2, 4), (3, 4)];

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome {
            ok,
            detail: detail.into(),
        }
    }
}

fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.random_range(-5..=5), rng.random_range(1..=5))
}

trait Sample: Scalar {
    fn sample(rng: &mut ChaCha8Rng) -> Self;
}

impl Sample for Rational {
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        small_rational(rng)
    }
}

impl Sample for GaussianRational {
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        gaussian(small_rational(rng), small_rational(rng))
    }
}

impl Sample for f64 {
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        small_rational(rng).to_float()
    }
}

impl Sample for immanant::Complex64 {
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        GaussianRational::sample(rng).to_float()
    }
}

fn random_matrix<S: Sample>(n: usize, rng: &mut ChaCha8Rng) -> Matrix<S> {
    Matrix::from_fn(n, |_, _| S::sample(rng))
}

fn random_tensor<S: Sample>(n: usize, m: usize, rng: &mut ChaCha8Rng) -> TensorVector<S> {
    TensorVector::from_fn(n, m, |_| S::sample(rng))
}

fn lhs<S: Scalar>(a: &Matrix<S>, lambda: &Partition, mu: &WeakComposition) -> S {
    let i = multiset_from_weight(mu);
    immanant_of_submatrix(a, lambda, &i).unwrap() * S::from_rational(&Rational::new(1.into(), i.m_of_i().into()))
}

/// `(matrix index, matrix)` pairs for one `(n, m)`: even indices real,
/// odd ones Gaussian.
fn trace_matrices(n: usize, m: usize) -> Vec<(usize, Result<Matrix<Rational>, Matrix<GaussianRational>>)> {
    (0..20)
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64((1000 * n + 100 * m + k) as u64);
            let a = if k % 2 == 0 {
                Ok(random_matrix(n, &mut rng))
            } else {
                Err(random_matrix(n, &mut rng))
            };
            (k, a)
        })
        .collect()
}

fn exact_trace_mismatches<S: Scalar>(a: &Matrix<S>, m: usize) -> (usize, Vec<String>) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for lambda in enumerate_partitions(m, None) {
        for mu in enumerate_weak_compositions(m, a.n()) {
            checked += 1;
            let rhs = trace_formula_rhs_exact(a, &lambda, &mu).unwrap();
            if rhs != lhs(a, &lambda, &mu) {
                bad.push(format!("lambda={lambda} mu={mu}"));
            }
        }
    }
    (checked, bad)
}

fn criterion_1() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (n, m) in TRACE_SIZES {
        for (k, a) in trace_matrices(n, m) {
            let (c, b) = match &a {
                Ok(r) => exact_trace_mismatches(r, m),
                Err(g) => exact_trace_mismatches(g, m),
            };
            checked += c;
            bad.extend(b.into_iter().map(|s| format!("n={n} m={m} matrix {k}: {s}")));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{checked} (A, lambda, mu) triples, {} mismatches {:?}", bad.len(), bad.first()),
    )
}

struct FloatStats {
    checked: usize,
    max_err: f64,
    max_vanishing: f64,
}

fn orthogonal_errors<S: ToFloat>(a: &Matrix<S>, m: usize, stats: &mut FloatStats) {
    let af = a.map(|x| x.to_float());
    for lambda in enumerate_partitions(m, None) {
        for mu in enumerate_weak_compositions(m, a.n()) {
            let exact = lhs(a, &lambda, &mu).to_float();
            let terms = trace_formula_terms(&af, &lambda, &mu).unwrap();
            let total = terms
                .iter()
                .fold(<S::Float as num_traits::Zero>::zero(), |acc, t| acc + t.value.clone());
            stats.checked += 1;
            stats.max_err = stats.max_err.max((total - exact).modulus());
            for t in terms.iter().filter(|t| !t.theta_semistandard) {
                stats.max_vanishing = stats.max_vanishing.max(t.value.modulus());
            }
        }
    }
}

fn criterion_2() -> Outcome {
    let mut stats = FloatStats {
        checked: 0,
        max_err: 0.0,
        max_vanishing: 0.0,
    };
    for (n, m) in TRACE_SIZES {
        for (_, a) in trace_matrices(n, m) {
            match &a {
                Ok(r) => orthogonal_errors(r, m, &mut stats),
                Err(g) => orthogonal_errors(g, m, &mut stats),
            }
        }
    }
    Outcome::new(
        stats.max_err < 1e-9 && stats.max_vanishing < 1e-12,
        format!(
            "{} triples, max |orthogonal - exact| = {:.2e} (tol 1e-9), max non-semistandard term = {:.2e} (tol 1e-12)",
            stats.checked, stats.max_err, stats.max_vanishing
        ),
    )
}

fn tally(records: &[CheckRecord], failures: &mut Vec<String>, label: &str) -> usize {
    for r in records.iter().filter(|r| r.verdict != Verdict::Pass) {
        failures.push(format!(
            "{label}: {:?} lambda={} mu={:?} lhs={} rhs={} {:?}",
            r.check, r.lambda, r.mu, r.lhs, r.rhs, r.verdict
        ));
    }
    records.len()
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for k in 0..100u64 {
        let n = 2 + (k as usize % 3);
        let certs = [
            Certificate::PdReal(random_pd_real(n, 3000 + k)),
            Certificate::PdGaussian(random_pd_gaussian(n, 4000 + k)),
            Certificate::Tn(random_tn_nonsingular(n, 5000 + k, 2 * n)),
        ];
        for cert in &certs {
            for m in 2..=5 {
                let recs = criterion_sweep(cert, m).unwrap();
                checked += tally(&recs, &mut failures, &format!("instance {k} n={n} m={m}"));
            }
        }
    }
    let mut dominance_checked = 0;
    let mut dominance_bad = 0;
    for m in 1..=6 {
        for n in 1..=m {
            for mu in enumerate_weak_compositions(m, n) {
                for lambda in enumerate_partitions(m, None) {
                    dominance_checked += 1;
                    if !positivity_prediction(&lambda, &mu).unwrap().consistent() {
                        dominance_bad += 1;
                    }
                }
            }
        }
    }
    Outcome::new(
        failures.is_empty() && dominance_bad == 0,
        format!(
            "{checked} sign checks on 300 instances, {} failures {:?}; Kostka vs dominance {dominance_checked} pairs, {dominance_bad} disagreements",
            failures.len(),
            failures.first()
        ),
    )
}

/// 200 PSD (alternately singular, alternately Gaussian) and 200 TN
/// instances with `n` cycling through `1..=max_n`.
fn inequality_family(max_n: usize) -> Vec<(String, Certificate)> {
    let mut out = Vec::new();
    for (class, base) in [(MatrixClass::Psd, 6000u64), (MatrixClass::Tn, 7000)] {
        for k in 0..200usize {
            let n = 1 + k % max_n;
            out.push((
                format!("{class:?} #{k} n={n}"),
                make_instance(class, n, k, base + k as u64),
            ));
        }
    }
    out
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut singular = 0;
    let mut column_nonzero = 0;
    for (label, cert) in inequality_family(4) {
        singular += usize::from(!cert.is_nonsingular());
        let recs = schur_sweep(&cert).unwrap();
        checked += tally(&recs, &mut failures, &label);
        let column = Partition::column(cert.n());
        column_nonzero += recs
            .iter()
            .filter(|r| r.lambda == column && r.margin != ratio(0, 1))
            .count();
    }
    Outcome::new(
        failures.is_empty() && column_nonzero == 0,
        format!(
            "{checked} margins on 400 instances ({singular} singular), {} negative {:?}; nonzero margins at (1^n): {column_nonzero}",
            failures.len(),
            failures.first()
        ),
    )
}

fn criterion_5() -> Outcome {
    let mut stated_fail = Vec::new();
    let mut homogeneous_fail = Vec::new();
    let mut checked = 0;
    let mut reduction_bad = 0;
    let mut equal_degree_fail = 0;
    for (label, cert) in inequality_family(3) {
        let n = cert.n();
        for m in 1..=4 {
            let recs = orbit_sweep(&cert, m, OrbitWeights::All).unwrap();
            let (stated, homogeneous): (Vec<_>, Vec<_>) =
                recs.into_iter().partition(|r| r.check == CheckKind::Orbit);
            let before = stated_fail.len();
            checked += tally(&stated, &mut stated_fail, &format!("{label} m={m}"));
            if m == n {
                equal_degree_fail += stated_fail.len() - before;
            }
            tally(&homogeneous, &mut homogeneous_fail, &format!("{label} m={m}"));
            if m == n {
                let unit = WeakComposition::new(vec![1; n]);
                let schur: BTreeMap<Partition, CheckRecord> =
                    schur_sweep(&cert).unwrap().into_iter().map(|r| (r.lambda.clone(), r)).collect();
                for r in stated.iter().filter(|r| r.mu.as_ref() == Some(&unit)) {
                    let s = &schur[&r.lambda];
                    if (&r.lhs, &r.rhs) != (&s.lhs, &s.rhs) {
                        reduction_bad += 1;
                    }
                }
            }
        }
    }
    Outcome::new(
        stated_fail.is_empty() && reduction_bad == 0,
        format!(
            "{checked} (instance, m, lambda, mu) checks: {} violations of the stated bound ({equal_degree_fail} with m = n) {:?}; \
             degree-matched bound LHS^n >= (|O| K)^n det^m: {} violations; unit-weight reduction mismatches: {reduction_bad}",
            stated_fail.len(),
            stated_fail.first(),
            homogeneous_fail.len()
        ),
    )
}

fn contravariance_failures<S: Sample>(seed: u64, tol: f64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sizes = [(2, 2), (2, 3), (3, 2), (3, 3)];
    (0..100)
        .filter(|&k| {
            let (n, m) = sizes[k % sizes.len()];
            let x = if k % 2 == 0 {
                let mut images: Vec<usize> = (0..m).collect();
                for i in (1..m).rev() {
                    images.swap(i, rng.random_range(0..=i));
                }
                Adjointable::Permutation(Permutation::from_images(images).unwrap())
            } else {
                Adjointable::Matrix(random_matrix::<S>(n, &mut rng))
            };
            let v = random_tensor::<S>(n, m, &mut rng);
            let w = random_tensor::<S>(n, m, &mut rng);
            !check_contravariance(&x, &v, &w, tol).unwrap()
        })
        .count()
}

fn criterion_6() -> Outcome {
    let contra = [
        ("rational", contravariance_failures::<Rational>(1, 0.0)),
        ("gaussian", contravariance_failures::<GaussianRational>(2, 0.0)),
        ("f64", contravariance_failures::<f64>(3, 1e-9)),
        ("complex64", contravariance_failures::<immanant::Complex64>(4, 1e-9)),
    ];
    let contra_bad: usize = contra.iter().map(|c| c.1).sum();

    let mut capelli_checked = 0;
    let mut capelli_bad = Vec::new();
    let mut max_residual: f64 = 0.0;
    for (n, m) in [(2, 2), (2, 3), (3, 3)] {
        for lambda in enumerate_partitions(m, None) {
            let tableaux = enumerate_syt(&lambda);
            for mu in enumerate_weak_compositions(m, n) {
                let mut fibers: BTreeMap<Vec<Vec<usize>>, Vec<usize>> = BTreeMap::new();
                for (i, t) in tableaux.iter().enumerate() {
                    let theta = theta_mu(t, &mu).unwrap();
                    if theta.is_semistandard {
                        fibers.entry(theta.rows).or_default().push(i);
                    }
                }
                for members in fibers.values().filter(|f| f.len() == 1) {
                    let t = &tableaux[members[0]];
                    for k in 1..=n {
                        for u in [0.0, 1.0, 2.0] {
                            let check = verify_capelli(&lambda, &mu, t, k, u, 1e-8).unwrap();
                            capelli_checked += 1;
                            max_residual = max_residual.max(check.residual);
                            if !check.passed {
                                capelli_bad.push(format!("lambda={lambda} mu={mu} k={k} u={u}"));
                            }
                        }
                    }
                }
            }
        }
    }
    Outcome::new(
        contra_bad == 0 && capelli_bad.is_empty(),
        format!(
            "contravariance failures per mode {contra:?}; Capelli {capelli_checked} checks, {} failures {:?}, max residual {max_residual:.2e} (tol 1e-8)",
            capelli_bad.len(),
            capelli_bad.first()
        ),
    )
}

fn criterion_7() -> Outcome {
    let (mut unique, mut fibers_multi, mut zero) = (0, 0, 0);
    let mut bad = Vec::new();
    for (n, m) in [(2, 3), (3, 3), (3, 4)] {
        for lambda in enumerate_partitions(m, None) {
            for mu in enumerate_weak_compositions(m, n) {
                let mut fibers: BTreeMap<Vec<Vec<usize>>, Vec<f64>> = BTreeMap::new();
                for rec in schur_weyl_norms(&lambda, &mu).unwrap() {
                    if rec.theta.is_semistandard {
                        fibers.entry(rec.theta.rows).or_default().push(rec.norm);
                    } else {
                        zero += 1;
                        if rec.norm >= 1e-12 {
                            bad.push(format!("lambda={lambda} mu={mu}: non-semistandard norm {:.2e}", rec.norm));
                        }
                    }
                }
                for norms in fibers.values() {
                    let total: f64 = norms.iter().map(|x| x * x).sum();
                    if norms.len() == 1 {
                        unique += 1;
                    } else {
                        fibers_multi += 1;
                    }
                    if (total - 1.0).abs() > 1e-9 {
                        bad.push(format!("lambda={lambda} mu={mu}: fiber {norms:?}"));
                    }
                }
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{unique} unique preimages, {fibers_multi} multi-preimage fibers, {zero} vanishing vectors; {} failures {:?}",
            bad.len(),
            bad.first()
        ),
    )
}

fn criterion_8() -> Outcome {
    let mut problems = Vec::new();
    for m in 1..=7 {
        for lambda in enumerate_partitions(m, None) {
            let h = hook_data(&lambda);
            let count = enumerate_syt(&lambda).len() as u64;
            if count != factorial(m) / h.hook_product || count != h.dimension {
                problems.push(format!("|SYT({lambda})| = {count}"));
            }
        }
    }
    let mut kostka_pairs = 0;
    for n in 1..=4 {
        for m in 1..=6 {
            for mu in enumerate_weak_compositions(m, n) {
                let sorted = sort_to_partition(&mu);
                let padded = WeakComposition::new((0..n).map(|i| sorted.part(i)).collect());
                for lambda in enumerate_partitions(m, None) {
                    kostka_pairs += 1;
                    if kostka(&lambda, &mu).unwrap() != kostka(&lambda, &padded).unwrap() {
                        problems.push(format!("K({lambda},{mu}) not symmetric"));
                    }
                }
            }
        }
    }
    let mut round_trips = 0;
    for n in 1..=4 {
        for m in 1..=5 {
            for lambda in enumerate_partitions(m, Some(n)) {
                for mu in enumerate_weak_compositions(m, n) {
                    for t in enumerate_ssyt(&lambda, &mu).unwrap() {
                        round_trips += 1;
                        let g = gt_from_ssyt(&t, n).unwrap();
                        let back = ssyt_from_gt(&g).unwrap();
                        if back != t || g.weight() != mu || g.shape() != lambda {
                            problems.push(format!("GT round trip {:?}", t.rows()));
                        }
                    }
                }
            }
        }
    }
    for m in 1..=6 {
        let table = character_table(m);
        let parts = table.partitions();
        let order = factorial(m) as i128;
        for a in parts {
            for b in parts {
                let rows: i128 = parts
                    .iter()
                    .map(|rho| class_size(rho) as i128 * (table.value(a, rho) * table.value(b, rho)) as i128)
                    .sum();
                if rows != if a == b { order } else { 0 } {
                    problems.push(format!("row orthogonality m={m} {a} {b}"));
                }
                let cols: i128 = parts
                    .iter()
                    .map(|l| (table.value(l, a) * table.value(l, b)) as i128)
                    .sum();
                if cols != if a == b { centralizer_order(a) as i128 } else { 0 } {
                    problems.push(format!("column orthogonality m={m} {a} {b}"));
                }
            }
        }
    }
    Outcome::new(
        problems.is_empty(),
        format!(
            "SYT counts m<=7, {kostka_pairs} Kostka symmetry pairs, {round_trips} GT round trips, character orthogonality m<=6; {} problems {:?}",
            problems.len(),
            problems.first()
        ),
    )
}

fn criterion_9() -> Outcome {
    let strategies = [
        KernelStrategy::Naive,
        KernelStrategy::CycleCached,
        KernelStrategy::Parallel { workers: 1 },
        KernelStrategy::Parallel { workers: 4 },
    ];
    let shapes = enumerate_partitions(6, None);
    let mut rng = ChaCha8Rng::seed_from_u64(9000);
    let mut disagreements = Vec::new();
    let mut bit_drift = 0;
    let mut compared = 0;
    for k in 0..50 {
        let a: Matrix<Rational> = random_matrix(6, &mut rng);
        let all = immanants_all_shapes(&a);
        let af = a.map(|x| x.to_float());
        for lambda in &shapes {
            let reference = immanant_with(&a, lambda, KernelStrategy::Naive).unwrap();
            for s in strategies {
                compared += 1;
                if immanant_with(&a, lambda, s).unwrap() != reference {
                    disagreements.push(format!("matrix {k} lambda={lambda} {s}"));
                }
            }
            if all[lambda] != reference {
                disagreements.push(format!("matrix {k} lambda={lambda} all-shapes"));
            }
            let one = immanant_with(&af, lambda, KernelStrategy::Parallel { workers: 1 }).unwrap();
            for workers in [2, 3, 8] {
                let other = immanant_with(&af, lambda, KernelStrategy::Parallel { workers }).unwrap();
                bit_drift += usize::from(one.to_bits() != other.to_bits());
            }
        }
    }
    Outcome::new(
        disagreements.is_empty() && bit_drift == 0,
        format!(
            "{compared} exact comparisons, {} disagreements {:?}; float parallel results differing across 1/2/3/8 threads: {bit_drift}",
            disagreements.len(),
            disagreements.first()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 9] = [
        (1, "exact weight-space trace equals Imm(A_I)/m(I)", criterion_1),
        (2, "orthogonal-form trace agrees with exact value", criterion_2),
        (3, "immanant positivity iff nonzero Kostka number", criterion_3),
        (4, "Schur inequality Imm >= f det", criterion_4),
        (5, "Weyl-orbit inequality", criterion_5),
        (6, "contravariance and Capelli eigenvalues", criterion_6),
        (7, "Schur-Weyl vector norms", criterion_7),
        (8, "combinatorial self-consistency", criterion_8),
        (9, "immanant kernel equivalence", criterion_9),
    ];
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (id, title, run) in criteria {
        if !selected.is_empty() && !selected.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Outcome::new(false, format!("panicked: {msg}"))
        });
        failed += usize::from(!outcome.ok);
        println!(
            "criterion {id} {}: {title}: {} [{:.1}s]",
            if outcome.ok { "PASS" } else { "FAIL" },
            outcome.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    }
}
