//! Named exact checks over one dimension, collected into a [`SuiteReport`].
//!
//! Check ids are a stable contract. Failures are data: a failing [`CheckResult`] carries the
//! first counterexample in index order, rendered with exact coefficient strings.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::cyclotomic::{CycScalar, Dimension};
use crate::error::Error;
use crate::operators::{swap_direct, ExactMatrix, KpIndex, OperatorSource, StandardOperators, WeylIndex};
use crate::relation::{closed_form, conjugate_product, decompose_phase_kpm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckFamily {
    Chrestenson,
    Weyl,
    Kpm,
    Relation,
    Trace,
}

impl CheckFamily {
    pub const ALL: [CheckFamily; 5] =
        [CheckFamily::Chrestenson, CheckFamily::Weyl, CheckFamily::Kpm, CheckFamily::Relation, CheckFamily::Trace];

    pub fn name(self) -> &'static str {
        match self {
            CheckFamily::Chrestenson => "chrestenson",
            CheckFamily::Weyl => "weyl",
            CheckFamily::Kpm => "kpm",
            CheckFamily::Relation => "relation",
            CheckFamily::Trace => "trace",
        }
    }

    pub fn checks(self) -> &'static [CheckId] {
        use CheckId::*;
        match self {
            CheckFamily::Chrestenson => &[ChrestensonUnitary],
            CheckFamily::Weyl => &[WeylOrthonormality, WeylTraceless],
            CheckFamily::Kpm => &[KpmSwap, KpmHermitian, KpmInvolution, KpmOrthogonal, KpmTraceOne],
            CheckFamily::Relation => &[RelationProposition, RelationBijection],
            CheckFamily::Trace => &[WeylTraceless, KpmTraceOne],
        }
    }
}

impl FromStr for CheckFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        CheckFamily::ALL
            .into_iter()
            .find(|f| f.name() == s.trim())
            .ok_or_else(|| Error::UnknownCheckFamily(s.to_string()))
    }
}

impl fmt::Display for CheckFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    ChrestensonUnitary,
    WeylOrthonormality,
    WeylTraceless,
    KpmSwap,
    KpmHermitian,
    KpmInvolution,
    KpmOrthogonal,
    KpmTraceOne,
    RelationProposition,
    RelationBijection,
}

impl CheckId {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::ChrestensonUnitary => "chrestenson.unitary",
            CheckId::WeylOrthonormality => "weyl.orthonormality",
            CheckId::WeylTraceless => "weyl.traceless",
            CheckId::KpmSwap => "kpm.axiom1.swap",
            CheckId::KpmHermitian => "kpm.axiom2.hermitian",
            CheckId::KpmInvolution => "kpm.axiom3.involution",
            CheckId::KpmOrthogonal => "kpm.axiom4.orthogonal",
            CheckId::KpmTraceOne => "kpm.trace_one",
            CheckId::RelationProposition => "relation.proposition",
            CheckId::RelationBijection => "relation.bijection",
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub check_id: String,
    pub dimension: u32,
    pub passed: bool,
    /// Present whenever `passed` is false.
    pub detail: Option<String>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub dimension: u32,
    /// Sorted by `check_id`.
    pub results: Vec<CheckResult>,
    pub all_passed: bool,
}

impl SuiteReport {
    pub fn result(&self, id: CheckId) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.check_id == id.as_str())
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.passed)
    }
}

/// Runs the selected families against the standard constructors. An empty selection runs all.
pub fn run_suite(d: Dimension, selection: &[CheckFamily]) -> SuiteReport {
    run_suite_with(&StandardOperators, d, selection)
}

pub fn run_suite_with(source: &dyn OperatorSource, d: Dimension, selection: &[CheckFamily]) -> SuiteReport {
    let families: &[CheckFamily] = if selection.is_empty() { &CheckFamily::ALL } else { selection };
    let ids: BTreeSet<CheckId> = families.iter().flat_map(|f| f.checks().iter().copied()).collect();
    let ids: Vec<_> = ids.into_iter().collect();
    let mut results: Vec<CheckResult> = ids.par_iter().map(|&id| run_check(source, d, id)).collect();
    results.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    let all_passed = results.iter().all(|r| r.passed);
    SuiteReport { dimension: d.get(), results, all_passed }
}

pub fn run_check(source: &dyn OperatorSource, d: Dimension, id: CheckId) -> CheckResult {
    let start = Instant::now();
    let failure = match id {
        CheckId::ChrestensonUnitary => chrestenson_unitary(source, d),
        CheckId::WeylOrthonormality => weyl_orthonormality(source, d),
        CheckId::WeylTraceless => weyl_traceless(source, d),
        CheckId::KpmSwap => kpm_swap(source, d),
        CheckId::KpmHermitian => kpm_hermitian(source, d),
        CheckId::KpmInvolution => kpm_involution(source, d),
        CheckId::KpmOrthogonal => kpm_orthogonal(source, d),
        CheckId::KpmTraceOne => kpm_trace_one(source, d),
        CheckId::RelationProposition => relation_proposition(source, d),
        CheckId::RelationBijection => relation_bijection(source, d),
    };
    CheckResult {
        check_id: id.as_str().to_string(),
        dimension: d.get(),
        passed: failure.is_none(),
        detail: failure,
        elapsed: start.elapsed(),
    }
}

type Failure = Option<String>;

fn integer(d: Dimension, v: i64) -> CycScalar {
    CycScalar::from_integer(d, v)
}

fn d_scalar(d: Dimension) -> CycScalar {
    integer(d, i64::from(d.get()))
}

/// Describes how `got` deviates from `want`, or `None` if they agree.
fn compare(label: &str, got: &ExactMatrix, want: &ExactMatrix) -> Failure {
    match got.first_difference(want) {
        Ok(None) => None,
        Ok(Some((r, c))) => Some(format!(
            "{label}: entry ({r},{c}) is {} (sqrt_d_exp {}), expected {}",
            got.get(r, c),
            got.sqrt_d_exp(),
            want.get(r, c)
        )),
        Err(e) => Some(format!("{label}: {e}")),
    }
}

fn expect_scalar(label: &str, got: &CycScalar, want: &CycScalar) -> Failure {
    (got != want).then(|| format!("{label} = {got}, expected {want}"))
}

fn first_failure<T: Sync>(items: &[T], f: impl Fn(&T) -> Failure + Sync + Send) -> Failure {
    items.par_iter().find_map_first(f)
}

fn chrestenson_unitary(source: &dyn OperatorSource, d: Dimension) -> Failure {
    let c = source.chrestenson(d);
    let ca = c.adjoint();
    let id = ExactMatrix::identity(d, d.size());
    let check = |label: &str, prod: Result<ExactMatrix, Error>| match prod {
        Ok(p) => compare(label, &p, &id),
        Err(e) => Some(format!("{label}: {e}")),
    };
    check(&format!("C_{d}^dagger C_{d}"), ca.matmul(&c)).or_else(|| check(&format!("C_{d} C_{d}^dagger"), c.matmul(&ca)))
}

fn weyl_all(source: &dyn OperatorSource, d: Dimension) -> Vec<(WeylIndex, ExactMatrix)> {
    let idx: Vec<_> = WeylIndex::all(d).collect();
    idx.par_iter().map(|&i| (i, source.weyl(d, i))).collect()
}

fn kpm_all(source: &dyn OperatorSource, d: Dimension) -> Vec<(KpIndex, ExactMatrix)> {
    let idx: Vec<_> = KpIndex::all(d).collect();
    idx.par_iter().map(|&i| (i, source.kronecker_pauli(d, i))).collect()
}

/// `<A_i, A_j> = d [i = j]` over a whole family.
fn pairwise_orthogonal<I: fmt::Display + Sync + Eq>(
    d: Dimension,
    name: &str,
    family: &[(I, ExactMatrix)],
) -> Failure {
    let dd = d_scalar(d);
    let zero = CycScalar::zero(d);
    first_failure(family, |(i, a)| {
        family.iter().find_map(|(j, b)| {
            let want = if i == j { &dd } else { &zero };
            match a.hs_inner(b) {
                Ok(got) => expect_scalar(&format!("<{name}{i}, {name}{j}>"), &got, want),
                Err(e) => Some(format!("<{name}{i}, {name}{j}>: {e}")),
            }
        })
    })
}

fn weyl_orthonormality(source: &dyn OperatorSource, d: Dimension) -> Failure {
    pairwise_orthogonal(d, "U", &weyl_all(source, d))
}

fn weyl_traceless(source: &dyn OperatorSource, d: Dimension) -> Failure {
    let family = weyl_all(source, d);
    first_failure(&family, |(i, u)| {
        let (t, s) = u.trace();
        let want = if i.n() == 0 && i.m() == 0 { d_scalar(d) } else { CycScalar::zero(d) };
        if s != 0 {
            return Some(format!("Tr U{i}: unexpected prefactor exponent {s}"));
        }
        expect_scalar(&format!("Tr U{i}"), &t, &want)
    })
}

fn kpm_swap(source: &dyn OperatorSource, d: Dimension) -> Failure {
    let family = kpm_all(source, d);
    let n = d.size();
    let partial = family
        .par_iter()
        .map(|(i, p)| p.tensor(p).map_err(|e| format!("Pi{i} (x) Pi{i}: {e}")))
        .try_reduce(
            || ExactMatrix::zeros(d, n * n),
            |mut acc, t| {
                acc.add_assign(&t).map_err(|e| format!("sum of Pi (x) Pi: {e}"))?;
                Ok(acc)
            },
        );
    match partial {
        Err(e) => Some(e),
        Ok(sum) => {
            let lhs = sum.scale_rational(&BigRational::new(BigInt::from(1), BigInt::from(d.get())));
            compare(&format!("(1/{d}) sum Pi (x) Pi vs swap"), &lhs, &swap_direct(d))
        }
    }
}

fn kpm_hermitian(source: &dyn OperatorSource, d: Dimension) -> Failure {
    let family = kpm_all(source, d);
    first_failure(&family, |(i, p)| compare(&format!("Pi{i}^dagger vs Pi{i}"), &p.adjoint(), p))
}

fn kpm_involution(source: &dyn OperatorSource, d: Dimension) -> Failure {
    let family = kpm_all(source, d);
    let id = ExactMatrix::identity(d, d.size());
    first_failure(&family, |(i, p)| match p.matmul(p) {
        Ok(sq) => compare(&format!("Pi{i}^2 vs I"), &sq, &id),
        Err(e) => Some(format!("Pi{i}^2: {e}")),
    })
}

fn kpm_orthogonal(source: &dyn OperatorSource, d: Dimension) -> Failure {
    pairwise_orthogonal(d, "Pi", &kpm_all(source, d))
}

fn kpm_trace_one(source: &dyn OperatorSource, d: Dimension) -> Failure {
    let family = kpm_all(source, d);
    let one = CycScalar::one(d);
    first_failure(&family, |(i, p)| {
        let (t, s) = p.trace();
        if s != 0 {
            return Some(format!("Tr Pi{i}: unexpected prefactor exponent {s}"));
        }
        expect_scalar(&format!("Tr Pi{i}"), &t, &one)
    })
}

fn relation_proposition(source: &dyn OperatorSource, d: Dimension) -> Failure {
    let c = source.chrestenson(d);
    let idx: Vec<_> = WeylIndex::all(d).collect();
    first_failure(&idx, |&w| {
        let entry = closed_form(d, w);
        let label = format!("C U{w} C vs w^{} Pi{}", entry.phase_exp, entry.kp);
        let brute = match conjugate_product(&c, &source.weyl(d, w)) {
            Ok(m) => m,
            Err(e) => return Some(format!("{label}: {e}")),
        };
        match source.kronecker_pauli(d, entry.kp).scalar_mul(&CycScalar::root_power(d, i64::from(entry.phase_exp))) {
            Ok(rhs) => compare(&label, &brute, &rhs),
            Err(e) => Some(format!("{label}: {e}")),
        }
    })
}

fn relation_bijection(source: &dyn OperatorSource, d: Dimension) -> Failure {
    let c = source.chrestenson(d);
    let idx: Vec<_> = WeylIndex::all(d).collect();
    let decomposed: Result<Vec<KpIndex>, String> = idx
        .par_iter()
        .map(|&w| {
            conjugate_product(&c, &source.weyl(d, w))
                .and_then(|m| decompose_phase_kpm(&m))
                .map(|(_, kp)| kp)
                .map_err(|e| format!("C U{w} C: {e}"))
        })
        .collect();
    let kps = match decomposed {
        Ok(k) => k,
        Err(e) => return Some(e),
    };
    let mut seen = HashSet::with_capacity(kps.len());
    for (w, kp) in idx.iter().zip(&kps) {
        if !seen.insert(*kp) {
            return Some(format!("Pi{kp} is reached twice (again from U{w})"));
        }
    }
    None
}
