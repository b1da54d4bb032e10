//! `immanant` command-line front end.
//!
//! Exit codes: 0 success, 1 a mathematical check failed (the offending
//! certificate is printed), 2 usage, input or resource-guard errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use immanant::combinatorics::{
    dominates, enumerate_partitions, enumerate_syt, enumerate_weak_compositions, kostka, multiset_from_weight,
    theta_mu, Partition, StandardTableau, WeakComposition,
};
use immanant::factories::{random_matrix, Certificate};
use immanant::immanant::{immanant_of_submatrix, immanant_with, KernelStrategy, Matrix};
use immanant::inequalities::{
    check_criterion, criterion_sweep, make_instance, scan, CheckKind, CheckRecord, MatrixClass, ScanConfig, Verdict,
    MAX_SCAN_DEGREE,
};
use immanant::symmetric_group::{character_table, mn_character};
use immanant::tensor::{tensor_dim, trace_formula_rhs_exact, trace_formula_rhs_orthogonal, verify_capelli};
use immanant::{Complex64, Error, GaussianRational, Rational, Scalar, ToFloat};

#[derive(Parser)]
#[command(name = "immanant", version, about = "Immanants, Kostka numbers and weight-space trace checks")]
struct Cli {
    /// Output format; JSON is the stable interface.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Rational, then Gaussian rational, then float.
    Auto,
    Rational,
    Gaussian,
    Float,
    Complex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Pd,
    Psd,
    Tn,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Criterion,
    Schur,
    Orbit,
    /// The orbit bound with both sides raised to matching degree.
    OrbitHomogeneous,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducible character value chi^shape(class), or the whole row.
    Character {
        #[arg(long)]
        shape: Partition,
        /// Cycle type; omit to list every class.
        #[arg(long)]
        class: Option<Partition>,
    },
    /// Number of semistandard tableaux of a shape and weight.
    Kostka {
        #[arg(long)]
        shape: Partition,
        #[arg(long)]
        weight: WeakComposition,
    },
    /// Whether one partition dominates another.
    Dominance {
        #[arg(long)]
        lambda: Partition,
        #[arg(long)]
        kappa: Partition,
    },
    /// Immanant of a matrix, or of its generalized submatrix A_I.
    Immanant {
        #[arg(long)]
        shape: Partition,
        /// Path to a JSON file, or inline JSON.
        #[arg(long)]
        matrix: String,
        /// Weight selecting the multiset I; the shape must then have size |weight|.
        #[arg(long)]
        weight: Option<WeakComposition>,
        #[arg(long, value_enum, default_value_t = Mode::Auto)]
        mode: Mode,
        /// naive, cycle-cached, parallel or parallel:<workers>.
        #[arg(long, default_value = "cycle-cached")]
        strategy: KernelStrategy,
    },
    /// Random certified matrix with its factorization.
    GenMatrix {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Instance index; selects real/Gaussian and singular variants.
        #[arg(long, default_value_t = 1)]
        index: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compares Imm(A_I)/m(I) with the exact and orthogonal weight-space traces.
    VerifyTrace {
        #[arg(long)]
        n: usize,
        /// Tensor degree; defaults to n.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Use this matrix instead of a seeded random one.
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Positivity criterion on a certified matrix.
    Criterion {
        /// Certificate file or inline JSON, as written by gen-matrix.
        #[arg(long)]
        certificate: String,
        /// Tensor degree for a full sweep; defaults to n.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, requires = "weight")]
        shape: Option<Partition>,
        #[arg(long, requires = "shape")]
        weight: Option<WeakComposition>,
    },
    /// Seeded scan of the inequalities over random certified matrices.
    CheckInequalities {
        #[arg(long)]
        n: usize,
        /// Tensor degree; defaults to n.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [ClassArg::Pd, ClassArg::Psd, ClassArg::Tn])]
        class: Vec<ClassArg>,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [CheckArg::All])]
        check: Vec<CheckArg>,
        /// Full JSON report destination.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Capelli eigenvalue checks on Gelfand-Tsetlin vectors.
    Capelli {
        #[arg(long)]
        shape: Partition,
        #[arg(long)]
        weight: WeakComposition,
        /// Standard tableau as JSON rows; omit to check every tableau whose
        /// image is the only preimage of a semistandard tableau.
        #[arg(long)]
        tableau: Option<String>,
        /// Operator order; omit for every k in 1..=n.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0.0)]
        u: f64,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

/// Errors that map to exit code 2.
struct UsageError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.into())
    }
}

type CliResult = Result<bool, UsageError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CliResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Character { shape, class } => character(fmt, shape, class.as_ref()),
        Command::Kostka { shape, weight } => {
            let k = kostka(shape, weight)?;
            emit(fmt, json!({ "shape": shape, "weight": weight, "kostka": k }), || k.to_string());
            Ok(true)
        }
        Command::Dominance { lambda, kappa } => {
            let d = dominates(lambda, kappa)?;
            emit(fmt, json!({ "lambda": lambda, "kappa": kappa, "dominates": d }), || d.to_string());
            Ok(true)
        }
        Command::Immanant {
            shape,
            matrix,
            weight,
            mode,
            strategy,
        } => {
            let value = read_json(matrix)?;
            let out = match mode {
                Mode::Rational => immanant_value::<Rational>(&value, shape, weight.as_ref(), *strategy)?,
                Mode::Gaussian => immanant_value::<GaussianRational>(&value, shape, weight.as_ref(), *strategy)?,
                Mode::Float => immanant_value::<f64>(&value, shape, weight.as_ref(), *strategy)?,
                Mode::Complex => immanant_value::<Complex64>(&value, shape, weight.as_ref(), *strategy)?,
                Mode::Auto => immanant_value::<Rational>(&value, shape, weight.as_ref(), *strategy)
                    .or_else(|_| immanant_value::<GaussianRational>(&value, shape, weight.as_ref(), *strategy))
                    .or_else(|_| immanant_value::<f64>(&value, shape, weight.as_ref(), *strategy))?,
            };
            let text = out["value"].as_str().map(str::to_string).unwrap_or_else(|| out["value"].to_string());
            emit(fmt, out, || text);
            Ok(true)
        }
        Command::GenMatrix {
            class,
            n,
            seed,
            index,
            out,
        } => gen_matrix(fmt, *class, *n, *seed, *index, out.as_deref()),
        Command::VerifyTrace {
            n,
            m,
            seed,
            matrix,
            tol,
        } => verify_trace(fmt, *n, m.unwrap_or(*n), *seed, matrix.as_deref(), *tol),
        Command::Criterion {
            certificate,
            m,
            shape,
            weight,
        } => criterion(fmt, certificate, *m, shape.as_ref().zip(weight.as_ref())),
        Command::CheckInequalities {
            n,
            m,
            count,
            seed,
            class,
            check,
            out,
        } => check_inequalities(fmt, *n, m.unwrap_or(*n), *count, *seed, class, check, out.as_deref()),
        Command::Capelli {
            shape,
            weight,
            tableau,
            k,
            u,
            tol,
        } => capelli(fmt, shape, weight, tableau.as_deref(), *k, *u, *tol),
    }
}

fn emit(fmt: Format, value: Value, text: impl FnOnce() -> String) {
    match fmt {
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("JSON values serialize")),
        Format::Text => println!("{}", text()),
    }
}

/// Reads `arg` as a file if such a file exists, otherwise parses it as JSON.
/// Parse errors carry line and column.
fn read_json(arg: &str) -> anyhow::Result<Value> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("malformed JSON in {}", path.display()))
    } else {
        serde_json::from_str(arg).context("argument is neither an existing file nor valid JSON")
    }
}

fn show<S: Scalar>(x: &S) -> String {
    match x.to_json() {
        Value::String(s) => s,
        other => other.to_string(),
    }
}

fn character(fmt: Format, shape: &Partition, class: Option<&Partition>) -> CliResult {
    if let Some(rho) = class {
        let chi = mn_character(shape, rho)?;
        emit(fmt, json!({ "shape": shape, "class": rho, "value": chi }), || chi.to_string());
        return Ok(true);
    }
    let table = character_table(shape.size());
    let row: Vec<(Partition, i64)> = table
        .partitions()
        .iter()
        .map(|rho| (rho.clone(), table.value(shape, rho)))
        .collect();
    let values: Vec<Value> = row.iter().map(|(rho, v)| json!({ "class": rho, "value": v })).collect();
    emit(fmt, json!({ "shape": shape, "values": values }), || {
        row.iter().map(|(rho, v)| format!("{rho}\t{v}")).collect::<Vec<_>>().join("\n")
    });
    Ok(true)
}

fn immanant_value<S: Scalar>(
    value: &Value,
    shape: &Partition,
    weight: Option<&WeakComposition>,
    strategy: KernelStrategy,
) -> anyhow::Result<Value> {
    let a = Matrix::<S>::from_json(value)?;
    let imm = match weight {
        Some(mu) => {
            if mu.len() != a.n() {
                bail!("weight has {} entries but the matrix is {}x{}", mu.len(), a.n(), a.n());
            }
            immanant_of_submatrix(&a, shape, &multiset_from_weight(mu))?
        }
        None => immanant_with(&a, shape, strategy)?,
    };
    Ok(json!({ "shape": shape, "weight": weight, "value": imm.to_json() }))
}

fn class_of(arg: ClassArg) -> MatrixClass {
    match arg {
        ClassArg::Pd => MatrixClass::Pd,
        ClassArg::Psd => MatrixClass::Psd,
        ClassArg::Tn => MatrixClass::Tn,
    }
}

fn gen_matrix(fmt: Format, class: ClassArg, n: usize, seed: u64, index: usize, out: Option<&Path>) -> CliResult {
    if n == 0 || n > 12 {
        return Err(anyhow!("resource guard: gen-matrix supports 1 <= n <= 12, got {n}").into());
    }
    let cert = make_instance(class_of(class), n, index, seed);
    let doc = json!({
        "seed": seed,
        "index": index,
        "certificate": cert.to_json(),
        "matrix": matrix_json(&cert),
    });
    if let Some(path) = out {
        write_json(path, &doc)?;
    }
    emit(fmt, doc, || {
        let mut s = format!("# seed {seed} index {index} det {}", cert.determinant());
        for row in cert.matrix().rows() {
            let cells: Vec<String> = row
                .iter()
                .map(|z| z.exact_real().map(|r| r.to_string()).unwrap_or_else(|| show(z)))
                .collect();
            s.push('\n');
            s.push_str(&cells.join("\t"));
        }
        s
    });
    Ok(true)
}

/// Real certificates print real entries.
fn matrix_json(cert: &Certificate) -> Value {
    let a = cert.matrix();
    match cert {
        Certificate::PdGaussian(_) => a.to_json(),
        _ => a.map(|z| z.exact_real().expect("real certificate")).to_json(),
    }
}

fn write_json(path: &Path, value: &Value) -> anyhow::Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))
}

/// Accepts a bare certificate or the gen-matrix document that wraps one.
fn load_certificate(arg: &str) -> anyhow::Result<Certificate> {
    let value = read_json(arg)?;
    let inner = value.get("certificate").unwrap_or(&value);
    Ok(Certificate::from_json(inner)?)
}

fn verify_trace(fmt: Format, n: usize, m: usize, seed: u64, matrix: Option<&str>, tol: f64) -> CliResult {
    tensor_dim(n, m)?;
    let (a, source) = match matrix {
        Some(arg) => {
            let value = read_json(arg)?;
            (Matrix::<Rational>::from_json(&value)?, "input")
        }
        None => (random_matrix::<Rational>(n, seed), "random"),
    };
    if a.n() != n {
        return Err(anyhow!("matrix is {}x{}, expected n = {n}", a.n(), a.n()).into());
    }
    let af = a.map(|x| x.to_float());
    let mut rows = Vec::new();
    let mut all_ok = true;
    for lambda in enumerate_partitions(m, None) {
        for mu in enumerate_weak_compositions(m, n) {
            let i = multiset_from_weight(&mu);
            let lhs = immanant_of_submatrix(&a, &lambda, &i)? / Rational::from_integer(i.m_of_i().into());
            let exact = trace_formula_rhs_exact(&a, &lambda, &mu)?;
            let float = trace_formula_rhs_orthogonal(&af, &lambda, &mu)?;
            let ok = exact == lhs && (float - lhs.to_float()).abs() <= tol;
            all_ok &= ok;
            rows.push((lambda.clone(), mu, lhs, exact, float, ok));
        }
    }
    let doc = json!({
        "n": n,
        "m": m,
        "seed": seed,
        "matrix_source": source,
        "matrix": a.to_json(),
        "tolerance": tol,
        "passed": all_ok,
        "rows": rows.iter().map(|(l, mu, lhs, exact, float, ok)| json!({
            "lambda": l,
            "mu": mu,
            "lhs": lhs.to_string(),
            "rhs_exact": exact.to_string(),
            "rhs_float": float,
            "status": if *ok { "pass" } else { "fail" },
        })).collect::<Vec<_>>(),
    });
    emit(fmt, doc, || {
        let mut s = format!("# n {n} m {m} seed {seed} matrix {source}\nlambda\tmu\tlhs\trhs_exact\trhs_float\tstatus");
        for (l, mu, lhs, exact, float, ok) in &rows {
            s.push_str(&format!(
                "\n{l}\t{mu}\t{lhs}\t{exact}\t{float:.12}\t{}",
                if *ok { "pass" } else { "FAIL" }
            ));
        }
        s
    });
    if !all_ok {
        eprintln!("trace mismatch; matrix: {}", a.to_json());
    }
    Ok(all_ok)
}

fn record_line(r: &CheckRecord) -> String {
    let mu = r.mu.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
    let verdict = match &r.verdict {
        Verdict::Pass => "pass".to_string(),
        Verdict::Fail => "FAIL".to_string(),
        Verdict::Skipped(why) => format!("skipped ({why})"),
    };
    format!("{:?}\t{}\t{mu}\t{}\t{}\t{verdict}", r.check, r.lambda, r.lhs, r.rhs)
}

fn criterion(
    fmt: Format,
    certificate: &str,
    m: Option<usize>,
    single: Option<(&Partition, &WeakComposition)>,
) -> CliResult {
    let cert = load_certificate(certificate)?;
    let records = match single {
        Some((lambda, mu)) => vec![check_criterion(&cert, lambda, mu)?.record],
        None => {
            let m = m.unwrap_or(cert.n());
            tensor_dim(cert.n(), m)?;
            criterion_sweep(&cert, m)?
        }
    };
    let ok = records.iter().all(|r| r.verdict != Verdict::Fail);
    let doc = json!({ "certificate": cert.to_json(), "passed": ok, "records": records });
    emit(fmt, doc, || {
        let mut s = String::from("check\tlambda\tmu\timmanant\tkostka\tverdict");
        for r in &records {
            s.push('\n');
            s.push_str(&record_line(r));
        }
        s
    });
    if !ok {
        eprintln!("criterion failed; certificate: {}", cert.to_json());
    }
    Ok(ok)
}

#[allow(clippy::too_many_arguments)]
fn check_inequalities(
    fmt: Format,
    n: usize,
    m: usize,
    count: usize,
    seed: u64,
    classes: &[ClassArg],
    checks: &[CheckArg],
    out: Option<&Path>,
) -> CliResult {
    let mut kinds = Vec::new();
    for c in checks {
        let add: &[CheckKind] = match c {
            CheckArg::Criterion => &[CheckKind::Criterion],
            CheckArg::Schur => &[CheckKind::Schur],
            CheckArg::Orbit => &[CheckKind::Orbit],
            CheckArg::OrbitHomogeneous => &[CheckKind::OrbitHomogeneous],
            CheckArg::All => &[
                CheckKind::Criterion,
                CheckKind::Schur,
                CheckKind::Orbit,
                CheckKind::OrbitHomogeneous,
            ],
        };
        for k in add {
            if !kinds.contains(k) {
                kinds.push(*k);
            }
        }
    }
    let config = ScanConfig {
        sizes: vec![(n, m)],
        count,
        seed,
        classes: classes.iter().map(|&c| class_of(c)).collect(),
        checks: kinds,
    };
    let report = match scan(&config) {
        Err(Error::ResourceGuard(msg)) => {
            return Err(anyhow!("resource guard: {msg} (limits: m <= {MAX_SCAN_DEGREE}, n^m <= 100000)").into())
        }
        other => other?,
    };
    if let Some(path) = out {
        write_json(path, &serde_json::to_value(&report)?)?;
    }
    let violations = report.violations();
    let counterexamples: Vec<Value> = report
        .summary
        .iter()
        .flat_map(|s| &s.counterexamples)
        .map(|c| {
            json!({
                "instance": c.instance,
                "certificate": report.instances[c.instance].certificate.to_json(),
                "record": c.record,
            })
        })
        .collect();
    let doc = json!({
        "seed": seed,
        "n": n,
        "m": m,
        "count": count,
        "violations": violations,
        "summary": report.summary.iter().map(|s| json!({
            "check": s.check,
            "passed": s.passed,
            "failed": s.failed,
            "skipped": s.skipped,
            "min_margin": s.min_margin.as_ref().map(ToString::to_string),
        })).collect::<Vec<_>>(),
        "counterexamples": counterexamples,
    });
    emit(fmt, doc, || {
        let mut s = format!("# seed {seed} n {n} m {m} count {count}\ncheck\tpassed\tfailed\tskipped\tmin_margin");
        for c in &report.summary {
            let margin = c.min_margin.as_ref().map(ToString::to_string).unwrap_or_else(|| "-".into());
            s.push_str(&format!("\n{:?}\t{}\t{}\t{}\t{margin}", c.check, c.passed, c.failed, c.skipped));
        }
        for c in report.summary.iter().flat_map(|s| &s.counterexamples).take(5) {
            s.push_str(&format!(
                "\ncounterexample {}: {}\n  certificate {}",
                c.instance,
                record_line(&c.record),
                report.instances[c.instance].certificate.to_json()
            ));
        }
        s
    });
    Ok(violations == 0)
}

fn capelli(
    fmt: Format,
    shape: &Partition,
    weight: &WeakComposition,
    tableau: Option<&str>,
    k: Option<usize>,
    u: f64,
    tol: f64,
) -> CliResult {
    let n = weight.len();
    tensor_dim(n, shape.size())?;
    let tableaux = match tableau {
        Some(arg) => {
            let rows: Vec<Vec<usize>> = serde_json::from_value(read_json(arg)?).context("tableau must be JSON rows")?;
            vec![StandardTableau::new(rows)?]
        }
        None => unique_preimages(shape, weight)?,
    };
    let ks: Vec<usize> = match k {
        Some(k) => vec![k],
        None => (1..=n).collect(),
    };
    let mut results = Vec::new();
    for t in &tableaux {
        for &k in &ks {
            let c = verify_capelli(shape, weight, t, k, u, tol)?;
            results.push((t.rows().to_vec(), k, c));
        }
    }
    let ok = results.iter().all(|r| r.2.passed);
    let doc = json!({
        "shape": shape,
        "weight": weight,
        "u": u,
        "tolerance": tol,
        "passed": ok,
        "checks": results.iter().map(|(rows, k, c)| json!({
            "tableau": rows,
            "k": k,
            "gt_row": c.gt_row,
            "expected": c.expected,
            "residual": c.residual,
            "passed": c.passed,
        })).collect::<Vec<_>>(),
    });
    emit(fmt, doc, || {
        let mut s = String::from("tableau\tk\tgt_row\texpected\tresidual\tstatus");
        for (rows, k, c) in &results {
            s.push_str(&format!(
                "\n{rows:?}\t{k}\t{:?}\t{}\t{:.2e}\t{}",
                c.gt_row,
                c.expected,
                c.residual,
                if c.passed { "pass" } else { "FAIL" }
            ));
        }
        s
    });
    Ok(ok)
}

/// Standard tableaux that are the only preimage of their semistandard image.
fn unique_preimages(shape: &Partition, weight: &WeakComposition) -> anyhow::Result<Vec<StandardTableau>> {
    if shape.size() != weight.size() {
        bail!("shape {shape} and weight {weight} have different sizes");
    }
    let mut fibers: std::collections::BTreeMap<Vec<Vec<usize>>, Vec<StandardTableau>> = Default::default();
    for t in enumerate_syt(shape) {
        let theta = theta_mu(&t, weight)?;
        if theta.is_semistandard {
            fibers.entry(theta.rows).or_default().push(t);
        }
    }
    Ok(fibers.into_values().filter(|f| f.len() == 1).flatten().collect())
}
