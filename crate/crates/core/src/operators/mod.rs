//! The three operator families on a qudit: the Chrestenson (DFT) operator, the Weyl basis
//! `U_nm` and the Kronecker-Pauli basis `Pi_nm`, plus the swap operator on two qudits.
//!
//! Matrix convention: entry `(r, c)` is the coefficient of `|r><c|`.

mod matrix;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use self::matrix::ExactMatrix;
use crate::cyclotomic::{CycScalar, Dimension};

macro_rules! index_pair {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        pub struct $name {
            n: u32,
            m: u32,
        }

        impl $name {
            /// Both components are reduced mod `d`.
            pub fn new(d: Dimension, n: i64, m: i64) -> Self {
                $name { n: d.reduce(n), m: d.reduce(m) }
            }

            #[inline]
            pub fn n(self) -> u32 {
                self.n
            }

            #[inline]
            pub fn m(self) -> u32 {
                self.m
            }

            /// All `d^2` pairs in row-major `(n, m)` order.
            pub fn all(d: Dimension) -> impl Iterator<Item = $name> {
                let size = d.get();
                (0..size).flat_map(move |n| (0..size).map(move |m| $name { n, m }))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({},{})", self.n, self.m)
            }
        }
    };
}

index_pair!(
    /// Names the Weyl operator `U_nm`.
    WeylIndex
);
index_pair!(
    /// Names the Kronecker-Pauli operator `Pi_nm`.
    KpIndex
);

/// `C_d = d^(-1/2) sum_{x,y} w^(xy) |y><x|`.
pub fn chrestenson(d: Dimension) -> ExactMatrix {
    ExactMatrix::from_fn(d, d.size(), 1, |y, x| CycScalar::root_power(d, (x * y) as i64))
}

/// `U_nm = sum_k w^(kn) |k><(k+m) mod d|`.
pub fn weyl(d: Dimension, idx: WeylIndex) -> ExactMatrix {
    let (n, m) = (i64::from(idx.n), idx.m as usize);
    let size = d.size();
    ExactMatrix::from_phase_permutation(d, (0..size).map(|k| ((k + m) % size, k as i64 * n)))
}

/// `Pi_nm = sum_k w^((k-n)m) |k><(2n-k) mod d|`.
pub fn kronecker_pauli(d: Dimension, idx: KpIndex) -> ExactMatrix {
    let (n, m) = (i64::from(idx.n), i64::from(idx.m));
    ExactMatrix::from_phase_permutation(
        d,
        (0..d.size()).map(|k| (d.reduce(2 * n - k as i64) as usize, (k as i64 - n) * m)),
    )
}

/// The swap on `C^d (x) C^d`: `sum_{i,j} |i,j><j,i|` with `|i,j>` at index `i*d + j`.
pub fn swap_direct(d: Dimension) -> ExactMatrix {
    let n = d.size();
    ExactMatrix::from_fn(d, n * n, 0, |r, c| {
        let (i, j) = (r / n, r % n);
        if c == j * n + i {
            CycScalar::one(d)
        } else {
            CycScalar::zero(d)
        }
    })
}

/// The parity permutation `sum_x |(-x) mod d><x|`, equal to `C_d^2`.
pub fn parity(d: Dimension) -> ExactMatrix {
    let n = d.size();
    ExactMatrix::from_phase_permutation(d, (0..n).map(|r| ((n - r) % n, 0)))
}

/// Supplies the operators that the verification suite checks.
///
/// [`StandardOperators`] forwards to the constructors in this module; test harnesses can wrap
/// it to inject faults.
pub trait OperatorSource: Sync {
    fn chrestenson(&self, d: Dimension) -> ExactMatrix;
    fn weyl(&self, d: Dimension, idx: WeylIndex) -> ExactMatrix;
    fn kronecker_pauli(&self, d: Dimension, idx: KpIndex) -> ExactMatrix;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StandardOperators;

impl OperatorSource for StandardOperators {
    fn chrestenson(&self, d: Dimension) -> ExactMatrix {
        chrestenson(d)
    }

    fn weyl(&self, d: Dimension, idx: WeylIndex) -> ExactMatrix {
        weyl(d, idx)
    }

    fn kronecker_pauli(&self, d: Dimension, idx: KpIndex) -> ExactMatrix {
        kronecker_pauli(d, idx)
    }
}
