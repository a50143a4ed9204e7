//! Acceptance gate. Runs without the libtest harness so that every criterion prints exactly
//! one `PASS`/`FAIL` line; the process exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use qudit_bases::cyclotomic::odd_primes_up_to;
use qudit_bases::suite::{run_check, CheckId};
use qudit_bases::{
    chrestenson, closed_form, conjugate_brute, full_table, kronecker_pauli, run_suite_with, weyl, CycScalar,
    Dimension, ExactMatrix, KpIndex, OperatorSource, StandardOperators, WeylIndex,
};
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);
type FloatOperator = (String, ExactMatrix, Vec<(f64, f64)>);

const BIN: &str = env!("CARGO_BIN_EXE_qudit-bases");

/// Frozen d=3 layout: (n, m, k, ell), row-major in (n, m).
const D3_EXPECTED: [(u32, u32, u32, u64); 9] =
    [(0, 0, 0, 1), (0, 1, 0, 3), (0, 2, 0, 2), (1, 0, 0, 4), (1, 1, 1, 5), (1, 2, 2, 6), (2, 0, 0, 7), (2, 1, 2, 9), (2, 2, 1, 8)];

/// Frozen d=5 phase exponents, row n holds m = 0..5.
const D5_PHASES: [[u64; 5]; 5] = [[0, 0, 0, 0, 0], [0, 2, 4, 1, 3], [0, 4, 3, 2, 1], [0, 1, 2, 3, 4], [0, 3, 1, 4, 2]];

fn dim(d: u32) -> Dimension {
    Dimension::new(d).expect("odd prime")
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(BIN).args(args).output().map_err(|e| format!("spawn failed: {e}"))?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn table_json(d: u32) -> Result<Vec<Value>, String> {
    let bytes = run_cli(&["table", "--dim", &d.to_string(), "--format", "json"])?;
    match serde_json::from_slice(&bytes).map_err(|e| e.to_string())? {
        Value::Array(rows) => Ok(rows),
        other => Err(format!("expected a JSON array, got {other}")),
    }
}

fn field(row: &Value, key: &str) -> Result<u64, String> {
    row.get(key).and_then(Value::as_u64).ok_or_else(|| format!("row {row} lacks `{key}`"))
}

fn within(label: &str, start: Instant, budget: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    if took > budget {
        return Err(format!("{label} took {took:.2?}, budget {budget:?}"));
    }
    Ok(took)
}

fn published_table_d3() -> Outcome {
    let start = Instant::now();
    let rows = table_json(3)?;
    if rows.len() != 9 {
        return Err(format!("{} rows", rows.len()));
    }
    for (row, &(n, m, k, ell)) in rows.iter().zip(&D3_EXPECTED) {
        let got = (field(row, "n")?, field(row, "m")?, field(row, "phase_exp")?, field(row, "paper_ell")?);
        if got != (n.into(), m.into(), k.into(), ell) || row["verified"] != Value::Bool(true) {
            return Err(format!("row (n,m)=({n},{m}): got {got:?}, expected ({n},{m},{k},{ell})"));
        }
    }
    let took = within("table --dim 3", start, Duration::from_secs(1))?;
    Ok(format!("phases 0,0,0,0,1,2,0,2,1 and tau indices match in {took:.2?}"))
}

fn published_table_d5() -> Outcome {
    let start = Instant::now();
    let rows = table_json(5)?;
    if rows.len() != 25 {
        return Err(format!("{} rows", rows.len()));
    }
    let mut ells = HashSet::new();
    for row in &rows {
        let (n, m) = (field(row, "n")? as usize, field(row, "m")? as usize);
        let k = field(row, "phase_exp")?;
        if k != D5_PHASES[n][m] || row["verified"] != Value::Bool(true) {
            return Err(format!("(n,m)=({n},{m}): k={k}, expected {}", D5_PHASES[n][m]));
        }
        ells.insert(field(row, "paper_ell")?);
    }
    if ells != (1..=25).collect() {
        return Err("chi indices are not a permutation of 1..25".into());
    }
    let took = within("table --dim 5", start, Duration::from_secs(1))?;
    Ok(format!("25 phase exponents match in {took:.2?}"))
}

fn proposition_at_scale() -> Outcome {
    let start = Instant::now();
    let primes = odd_primes_up_to(31);
    let mut identities = 0;
    for &p in &primes {
        let d = dim(p);
        for idx in WeylIndex::all(d) {
            let row = closed_form(d, idx);
            let rhs = kronecker_pauli(d, row.kp)
                .scalar_mul(&CycScalar::root_power(d, row.phase_exp.into()))
                .map_err(|e| e.to_string())?;
            if conjugate_brute(d, idx) != rhs {
                return Err(format!("d={p}: C U{idx} C != w^{} Pi{}", row.phase_exp, row.kp));
            }
            identities += 1;
        }
    }
    let took = within("proposition sweep", start, Duration::from_secs(60))?;
    Ok(format!("{identities} identities over d in {primes:?} in {took:.2?}"))
}

fn run_checks(dims: &[u32], ids: &[CheckId], budget: Duration) -> Outcome {
    let start = Instant::now();
    for &p in dims {
        for &id in ids {
            let r = run_check(&StandardOperators, dim(p), id);
            if !r.passed {
                return Err(format!("d={p} {}: {}", r.check_id, r.detail.unwrap_or_default()));
            }
        }
    }
    let took = within("suite", start, budget)?;
    Ok(format!("{} checks over d in {dims:?} in {took:.2?}", dims.len() * ids.len()))
}

fn kpm_axioms() -> Outcome {
    use CheckId::*;
    run_checks(
        &[3, 5, 7, 11, 13],
        &[KpmSwap, KpmHermitian, KpmInvolution, KpmOrthogonal, KpmTraceOne],
        Duration::from_secs(120),
    )
}

fn weyl_basis() -> Outcome {
    run_checks(&[3, 5, 7], &[CheckId::WeylOrthonormality, CheckId::WeylTraceless], Duration::from_secs(30))
}

fn composition_law() -> Outcome {
    let mut products = 0;
    for p in [3, 5] {
        let d = dim(p);
        for a in WeylIndex::all(d) {
            for b in WeylIndex::all(d) {
                let lhs = weyl(d, a).matmul(&weyl(d, b)).map_err(|e| e.to_string())?;
                let sum = WeylIndex::new(d, (a.n() + b.n()).into(), (a.m() + b.m()).into());
                let phase = CycScalar::root_power(d, i64::from(a.m() * b.n()));
                let rhs = weyl(d, sum).scalar_mul(&phase).map_err(|e| e.to_string())?;
                if lhs != rhs {
                    return Err(format!("d={p}: U{a} U{b} != w^{} U{sum}", a.m() * b.n()));
                }
                products += 1;
            }
        }
    }
    Ok(format!("{products} products at d in [3, 5]"))
}

fn bijectivity() -> Outcome {
    let primes = odd_primes_up_to(31);
    for &p in &primes {
        let d = dim(p);
        let rows = full_table(d).map_err(|e| format!("d={p}: {e}"))?;
        let image: HashSet<KpIndex> = rows.iter().map(|r| r.kp).collect();
        if rows.len() != d.size() * d.size() || image.len() != rows.len() {
            return Err(format!("d={p}: {} rows reach {} distinct operators", rows.len(), image.len()));
        }
    }
    Ok(format!("(n,m) -> kp is a permutation for d in {primes:?}"))
}

/// Serves the standard operators except for one entry, which is replaced by itself plus 1.
struct Corrupted {
    target: Target,
    row: usize,
    col: usize,
}

#[derive(Clone, Copy)]
enum Target {
    Chrestenson,
    Weyl(WeylIndex),
    Kpm(KpIndex),
}

impl Corrupted {
    fn corrupt(&self, m: ExactMatrix) -> ExactMatrix {
        let d = m.dimension();
        let bumped = m.get(self.row, self.col) + &CycScalar::one(d);
        m.with_entry(self.row, self.col, bumped).expect("entry in range")
    }
}

impl OperatorSource for Corrupted {
    fn chrestenson(&self, d: Dimension) -> ExactMatrix {
        let c = chrestenson(d);
        if matches!(self.target, Target::Chrestenson) {
            self.corrupt(c)
        } else {
            c
        }
    }

    fn weyl(&self, d: Dimension, idx: WeylIndex) -> ExactMatrix {
        let u = weyl(d, idx);
        match self.target {
            Target::Weyl(t) if t == idx => self.corrupt(u),
            _ => u,
        }
    }

    fn kronecker_pauli(&self, d: Dimension, idx: KpIndex) -> ExactMatrix {
        let p = kronecker_pauli(d, idx);
        match self.target {
            Target::Kpm(t) if t == idx => self.corrupt(p),
            _ => p,
        }
    }
}

fn fault_injection() -> Outcome {
    let d = dim(3);
    let mut targets = vec![(Target::Chrestenson, "C_3".to_string())];
    targets.extend(WeylIndex::all(d).map(|i| (Target::Weyl(i), format!("U{i}"))));
    targets.extend(KpIndex::all(d).map(|i| (Target::Kpm(i), format!("Pi{i}"))));
    let mut faults = 0;
    for (target, label) in &targets {
        for row in 0..3 {
            for col in 0..3 {
                let source = Corrupted { target: *target, row, col };
                let report = run_suite_with(&source, d, &[]);
                let named = report.failures().any(|f| f.detail.as_deref().is_some_and(|s| s.contains(label.as_str())));
                if !named {
                    let seen: Vec<_> = report.failures().map(|f| f.check_id.as_str()).collect();
                    return Err(format!("{label} entry ({row},{col}): no failure names it (failed: {seen:?})"));
                }
                faults += 1;
            }
        }
    }
    Ok(format!("{faults} single-entry faults each caught and attributed"))
}

fn cis(num: i64, d: u32) -> (f64, f64) {
    let theta = 2.0 * PI * num.rem_euclid(i64::from(d)) as f64 / f64::from(d);
    (theta.cos(), theta.sin())
}

/// Independent floating-point construction, prefactor included.
fn float_operators(d: u32) -> Vec<FloatOperator> {
    let dd = dim(d);
    let n = d as usize;
    let s = f64::from(d).sqrt();
    let mut out = Vec::new();
    let c: Vec<_> = (0..n * n)
        .map(|i| {
            let (re, im) = cis((i / n * (i % n)) as i64, d);
            (re / s, im / s)
        })
        .collect();
    out.push((format!("C_{d}"), chrestenson(dd), c));
    for idx in WeylIndex::all(dd) {
        let (wn, wm) = (idx.n() as usize, idx.m() as usize);
        let u = (0..n * n)
            .map(|i| if i % n == (i / n + wm) % n { cis((i / n * wn) as i64, d) } else { (0.0, 0.0) })
            .collect();
        out.push((format!("U{idx}"), weyl(dd, idx), u));
    }
    for idx in KpIndex::all(dd) {
        let (pn, pm) = (idx.n() as i64, idx.m() as i64);
        let p = (0..n * n)
            .map(|i| {
                let (k, col) = ((i / n) as i64, (i % n) as i64);
                if col == (2 * pn - k).rem_euclid(d.into()) {
                    cis((k - pn) * pm, d)
                } else {
                    (0.0, 0.0)
                }
            })
            .collect();
        out.push((format!("Pi{idx}"), kronecker_pauli(dd, idx), p));
    }
    out
}

fn float_cross_check() -> Outcome {
    const TOL: f64 = 1e-10;
    let mut worst = 0.0f64;
    let mut entries = 0;
    for d in [3, 5, 7] {
        for (name, exact, float) in float_operators(d) {
            for (i, ((re, im), (fr, fi))) in exact.to_complex().into_iter().flatten().zip(float).enumerate() {
                let err = (re - fr).hypot(im - fi);
                if err.is_nan() || err > TOL {
                    return Err(format!("d={d} {name} entry {i}: |exact - float| = {err:e}"));
                }
                worst = worst.max(err);
                entries += 1;
            }
        }
    }
    Ok(format!("{entries} entries, max deviation {worst:.1e}"))
}

fn determinism() -> Outcome {
    let args = ["table", "--dim", "7", "--format", "json"];
    let (a, b) = (run_cli(&args)?, run_cli(&args)?);
    if a != b {
        return Err("two runs differ".into());
    }
    Ok(format!("{} identical bytes", a.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC01 published table d=3", "exact", published_table_d3),
        ("AC02 published table d=5", "exact", published_table_d5),
        ("AC03 proposition for d <= 31", "exact", proposition_at_scale),
        ("AC04 KPM axioms", "exact", kpm_axioms),
        ("AC05 Weyl basis", "exact", weyl_basis),
        ("AC06 composition law", "exact", composition_law),
        ("AC07 bijectivity", "exact", bijectivity),
        ("AC08 fault injection", "exact", fault_injection),
        ("AC09 float cross-check", "1e-10", float_cross_check),
        ("AC10 determinism", "byte-identical", determinism),
    ];
    let mut failed = 0;
    for (name, tol, check) in criteria {
        match check() {
            Ok(note) => println!("PASS {name} [tol {tol}]: {note}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name} [tol {tol}]: {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
