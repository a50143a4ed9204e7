//! The conjugation identity `C_d U_nm C_d = w^k Pi_(n',m')`.
//!
//! Two independent routes produce it. [`conjugate_brute`] multiplies the exact matrices;
//! [`closed_form`] reads `(k, n', m')` off an index formula. Expanding the product, the sum over
//! the middle index is a geometric series that vanishes unless `y + n + x = 0 mod d`, leaving
//!
//! ```text
//! C_d U_nm C_d = sum_x w^(xm) |(-x-n) mod d><x|
//! ```
//!
//! Matching that against `Pi_(n',m') = sum_k w^((k-n')m') |k><(2n'-k) mod d|` gives
//! `n' = -n/2`, `m' = -m` and `k = -nm/2`, all mod `d`, where `1/2 = (d+1)/2`. No parity split
//! on `n` is needed. Every table row is cross-checked against the brute-force product.

use rayon::prelude::*;
use serde::Serialize;

use crate::cyclotomic::{CycScalar, Dimension};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::operators::{chrestenson, kronecker_pauli, weyl, ExactMatrix, KpIndex, WeylIndex};

/// One row of the conjugation table: `C_d U_weyl C_d = w^phase_exp Pi_kp`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ConjugationEntry {
    pub weyl: WeylIndex,
    pub phase_exp: u32,
    pub kp: KpIndex,
}

/// A table row together with the outcome of its brute-force cross-check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifiedEntry {
    pub entry: ConjugationEntry,
    pub verified: bool,
}

/// `C * U * C` for arbitrary (possibly perturbed) inputs.
pub fn conjugate_product(c: &ExactMatrix, u: &ExactMatrix) -> Result<ExactMatrix> {
    c.matmul(&u.matmul(c)?)
}

/// Exact normalized product `C_d U_idx C_d`. The `1/d` prefactor is absorbed, so the result is
/// an unscaled monomial matrix.
pub fn conjugate_brute(d: Dimension, idx: WeylIndex) -> ExactMatrix {
    conjugate_product(&chrestenson(d), &weyl(d, idx)).expect("operands share d and shape")
}

pub fn closed_form(d: Dimension, idx: WeylIndex) -> ConjugationEntry {
    let (n, m, half) = (i64::from(idx.n()), i64::from(idx.m()), i64::from(d.half()));
    ConjugationEntry {
        weyl: idx,
        phase_exp: d.reduce(-n * m % i64::from(d.get()) * half),
        kp: KpIndex::new(d, -n * half, -m),
    }
}

/// Recovers `(k, (n', m'))` with `m = w^k Pi_(n',m')`.
///
/// The support must be the involution `c = 2n' - r`, so `n'` comes from row 0. The phase at the
/// fixed point `r = n'` is `w^k` and the phase one row below is `w^(k+m')`. All `d` entries are
/// then checked against the recovered triple.
pub fn decompose_phase_kpm(m: &ExactMatrix) -> Result<(u32, KpIndex)> {
    let d = m.dimension();
    let size = d.size();
    if m.rows() != size {
        return Err(Error::ShapeMismatch { left: (m.rows(), m.cols()), right: (size, size) });
    }
    if m.sqrt_d_exp() != 0 {
        return Err(Error::ScaledOperand(m.sqrt_d_exp()));
    }
    let perm = m
        .phase_permutation()
        .ok_or_else(|| Error::NotPhaseKpm("not a monomial matrix with root-of-unity entries".into()))?;

    let n = d.reduce(perm[0].0 as i64 * i64::from(d.half()));
    let ni = i64::from(n);
    for (r, &(c, _)) in perm.iter().enumerate() {
        if c as u32 != d.reduce(2 * ni - r as i64) {
            return Err(Error::NotPhaseKpm(format!(
                "row {r} maps to column {c}, expected column {} for n'={n}",
                d.reduce(2 * ni - r as i64)
            )));
        }
    }

    let k = perm[n as usize].1;
    let next = (n as usize + 1) % size;
    let mp = d.reduce(i64::from(perm[next].1) - i64::from(k));
    for (r, &(_, phase)) in perm.iter().enumerate() {
        let expected = d.reduce(i64::from(k) + (r as i64 - ni) * i64::from(mp));
        if phase != expected {
            return Err(Error::NotPhaseKpm(format!(
                "row {r} carries w^{phase}, expected w^{expected} for k={k}, (n',m')=({n},{mp})"
            )));
        }
    }
    Ok((k, KpIndex::new(d, ni, i64::from(mp))))
}

/// Cross-checks one closed-form row against the exact product, both by direct comparison
/// with `w^k Pi_kp` and by decomposition.
pub fn check_entry(d: Dimension, entry: &ConjugationEntry) -> Result<()> {
    let brute = conjugate_brute(d, entry.weyl);
    let expected = kronecker_pauli(d, entry.kp).scalar_mul(&CycScalar::root_power(d, i64::from(entry.phase_exp)))?;
    if let Some((r, c)) = brute.first_difference(&expected)? {
        return Err(Error::Verification(format!(
            "C U{} C differs from w^{} Pi{} at ({r},{c}): {} vs {}",
            entry.weyl,
            entry.phase_exp,
            entry.kp,
            brute.get(r, c),
            expected.get(r, c)
        )));
    }
    let (k, kp) = decompose_phase_kpm(&brute)?;
    if (k, kp) != (entry.phase_exp, entry.kp) {
        return Err(Error::Verification(format!(
            "C U{} C decomposes as w^{k} Pi{kp}, closed form gives w^{} Pi{}",
            entry.weyl, entry.phase_exp, entry.kp
        )));
    }
    Ok(())
}

/// All `d^2` rows in row-major `(n, m)` order, each with its cross-check outcome.
pub fn verified_table(d: Dimension) -> Vec<VerifiedEntry> {
    let idx: Vec<_> = WeylIndex::all(d).collect();
    idx.par_iter()
        .map(|&w| {
            let entry = closed_form(d, w);
            VerifiedEntry { entry, verified: check_entry(d, &entry).is_ok() }
        })
        .collect()
}

/// All `d^2` rows, failing if any closed-form row disagrees with the exact product.
pub fn full_table(d: Dimension) -> Result<Vec<ConjugationEntry>> {
    let idx: Vec<_> = WeylIndex::all(d).collect();
    idx.par_iter()
        .map(|&w| {
            let entry = closed_form(d, w);
            check_entry(d, &entry).map(|()| entry)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum IndexOrigin {
    /// Reconstructed from the published `d = 3` / `d = 5` fixtures.
    Published,
    /// `ell = n*d + m + 1`; no published ordering exists for this `d`.
    Canonical,
}

/// Flat 1-based index `ell` over the Kronecker-Pauli family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaperIndexMap {
    d: Dimension,
    entries: Vec<KpIndex>,
    origin: IndexOrigin,
}

impl PaperIndexMap {
    pub fn dimension(&self) -> Dimension {
        self.d
    }

    pub fn origin(&self) -> IndexOrigin {
        self.origin
    }

    /// Position `ell - 1` holds the pair for `ell`.
    pub fn entries(&self) -> &[KpIndex] {
        &self.entries
    }

    pub fn kp(&self, ell: usize) -> Option<KpIndex> {
        ell.checked_sub(1).and_then(|i| self.entries.get(i).copied())
    }

    pub fn ell(&self, kp: KpIndex) -> usize {
        self.entries.iter().position(|&e| e == kp).expect("index map is a permutation") + 1
    }
}

pub fn paper_index_map(d: Dimension) -> PaperIndexMap {
    let entries = match d.get() {
        3 => fixtures::TAU_MATRICES
            .iter()
            .enumerate()
            .map(|(i, tau)| {
                let printed = ExactMatrix::from_fn(d, 3, 0, |r, c| match tau[r][c] {
                    Some(e) => CycScalar::root_power(d, i64::from(e)),
                    None => CycScalar::zero(d),
                });
                let mut hits = KpIndex::all(d).filter(|&kp| kronecker_pauli(d, kp) == printed);
                let kp = hits.next().unwrap_or_else(|| panic!("tau_{} matches no Kronecker-Pauli operator", i + 1));
                assert!(hits.next().is_none(), "tau_{} matches several operators", i + 1);
                kp
            })
            .collect(),
        5 => {
            let mut slots = vec![None; 25];
            for row in &fixtures::D5_TABLE {
                let brute = conjugate_brute(d, WeylIndex::new(d, row.n.into(), row.m.into()));
                let (_, kp) = decompose_phase_kpm(&brute).expect("C U C is a phased Kronecker-Pauli operator");
                slots[row.ell as usize - 1] = Some(kp);
            }
            slots.into_iter().map(|s| s.expect("published table covers every chi")).collect()
        }
        _ => {
            return PaperIndexMap { d, entries: KpIndex::all(d).collect(), origin: IndexOrigin::Canonical };
        }
    };
    PaperIndexMap { d, entries, origin: IndexOrigin::Published }
}
