use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported dimension {value}: d must be a prime integer strictly greater than 2")]
    InvalidDimension { value: u64 },

    #[error("dimension mismatch: operands live over d={left} and d={right}")]
    DimensionMismatch { left: u32, right: u32 },

    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("expected {expected} values, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("matrices are incomparable: sqrt(d) exponents {left} and {right} differ after normalization")]
    Incomparable { left: u32, right: u32 },

    #[error("operand carries a d^(-{0}/2) prefactor, an unscaled matrix is required")]
    ScaledOperand(u32),

    #[error("not a root-of-unity multiple of a Kronecker-Pauli operator: {0}")]
    NotPhaseKpm(String),

    #[error("internal consistency check failed: {0}")]
    Verification(String),

    #[error("unknown check family `{0}` (expected one of chrestenson, weyl, kpm, relation, trace)")]
    UnknownCheckFamily(String),
}
