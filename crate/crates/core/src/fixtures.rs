//! Published reference data for `d = 3` and `d = 5`.
//!
//! The tau family (`d = 3`) is given entry-by-entry as powers of `w`; `None` is a zero entry.
//! The chi family (`d = 5`) is only known through its conjugation table, so that table is the
//! fixture and the ordering is reconstructed from it.

/// Version tag for the fixture data below.
pub const FIXTURE_VERSION: &str = "1";

/// The nine 3x3 Kronecker-Pauli matrices `tau_1 .. tau_9`, as root exponents.
pub const TAU_MATRICES: [[[Option<u8>; 3]; 3]; 9] = {
    const O: Option<u8> = None;
    const A: Option<u8> = Some(0);
    const B: Option<u8> = Some(1);
    const C: Option<u8> = Some(2);
    [
        [[A, O, O], [O, O, A], [O, A, O]],
        [[A, O, O], [O, O, B], [O, C, O]],
        [[A, O, O], [O, O, C], [O, B, O]],
        [[O, O, A], [O, A, O], [A, O, O]],
        [[O, O, B], [O, A, O], [C, O, O]],
        [[O, O, C], [O, A, O], [B, O, O]],
        [[O, A, O], [A, O, O], [O, O, A]],
        [[O, B, O], [C, O, O], [O, O, A]],
        [[O, C, O], [B, O, O], [O, O, A]],
    ]
};

/// One printed identity `C_d U_nm C_d = w^phase * family_ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PublishedIdentity {
    pub n: u32,
    pub m: u32,
    pub phase: u32,
    pub ell: u32,
}

const fn id(n: u32, m: u32, phase: u32, ell: u32) -> PublishedIdentity {
    PublishedIdentity { n, m, phase, ell }
}

/// The nine `d = 3` identities, in printed layout order (row-major in `(n, m)`).
pub const D3_TABLE: [PublishedIdentity; 9] = [
    id(0, 0, 0, 1),
    id(0, 1, 0, 3),
    id(0, 2, 0, 2),
    id(1, 0, 0, 4),
    id(1, 1, 1, 5),
    id(1, 2, 2, 6),
    id(2, 0, 0, 7),
    id(2, 1, 2, 9),
    id(2, 2, 1, 8),
];

/// The twenty-five `d = 5` identities (phases are powers of `eta = exp(2 pi i / 5)`).
pub const D5_TABLE: [PublishedIdentity; 25] = [
    id(0, 0, 0, 1),
    id(0, 1, 0, 2),
    id(0, 2, 0, 3),
    id(0, 3, 0, 4),
    id(0, 4, 0, 5),
    id(1, 0, 0, 11),
    id(1, 1, 2, 12),
    id(1, 2, 4, 13),
    id(1, 3, 1, 14),
    id(1, 4, 3, 15),
    id(2, 0, 0, 21),
    id(2, 1, 4, 22),
    id(2, 2, 3, 23),
    id(2, 3, 2, 24),
    id(2, 4, 1, 25),
    id(3, 0, 0, 6),
    id(3, 1, 1, 7),
    id(3, 2, 2, 8),
    id(3, 3, 3, 9),
    id(3, 4, 4, 10),
    id(4, 0, 0, 16),
    id(4, 1, 3, 17),
    id(4, 2, 1, 18),
    id(4, 3, 4, 19),
    id(4, 4, 2, 20),
];

/// The published table for `d`, if one exists.
pub fn published_table(d: u32) -> Option<&'static [PublishedIdentity]> {
    match d {
        3 => Some(&D3_TABLE),
        5 => Some(&D5_TABLE),
        _ => None,
    }
}
