//! Exact Chrestenson, Weyl and Kronecker-Pauli operator bases for a qudit of odd prime
//! dimension `d`, and the conjugation relation `C_d U_nm C_d = w^k Pi_(n',m')` between them.
//!
//! All arithmetic happens in the cyclotomic field `Q(w)`, `w = exp(2 pi i / d)`, so every
//! identity is checked with exact equality.
//!
//! ```
//! use qudit_bases::{closed_form, conjugate_brute, kronecker_pauli, CycScalar, Dimension, WeylIndex};
//!
//! let d = Dimension::new(5)?;
//! let idx = WeylIndex::new(d, 1, 1);
//! let row = closed_form(d, idx);
//! let rhs = kronecker_pauli(d, row.kp).scalar_mul(&CycScalar::root_power(d, row.phase_exp.into()))?;
//! assert_eq!(conjugate_brute(d, idx), rhs);
//! # Ok::<(), qudit_bases::Error>(())
//! ```

pub mod cli;
pub mod cyclotomic;
mod error;
pub mod fixtures;
pub mod operators;
pub mod relation;
pub mod render;
pub mod suite;

pub use cyclotomic::{CycScalar, Dimension};
pub use error::{Error, Result};
pub use operators::{
    chrestenson, kronecker_pauli, swap_direct, weyl, ExactMatrix, KpIndex, OperatorSource, StandardOperators,
    WeylIndex,
};
pub use relation::{
    closed_form, conjugate_brute, decompose_phase_kpm, full_table, paper_index_map, ConjugationEntry, PaperIndexMap,
};
pub use suite::{run_suite, run_suite_with, CheckFamily, CheckResult, SuiteReport};
