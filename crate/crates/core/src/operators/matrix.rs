use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::cyclotomic::{CycScalar, Dimension};
use crate::error::{Error, Result};

/// Dense square matrix over `Q(w)` with an explicit `d^(-s/2)` prefactor.
///
/// The represented matrix is `entries * d^(-sqrt_d_exp / 2)`. Whenever the exponent reaches 2
/// a factor `1/d` is folded into the entries, so a normalized matrix always has exponent 0 or 1.
/// Two matrices are only comparable when their normalized exponents agree.
///
/// `size` is the number of rows (and columns); it is `d` for single-qudit operators and `d^2`
/// for tensor products.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactMatrix {
    d: Dimension,
    size: usize,
    sqrt_d_exp: u32,
    entries: Vec<CycScalar>,
}

impl ExactMatrix {
    /// Row-major entries. Fails if the entry count is not a square or an entry uses another `d`.
    pub fn new(d: Dimension, size: usize, entries: Vec<CycScalar>, sqrt_d_exp: u32) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::LengthMismatch { expected: size * size, found: entries.len() });
        }
        if let Some(bad) = entries.iter().find(|e| e.dimension() != d) {
            return Err(Error::DimensionMismatch { left: d.get(), right: bad.dimension().get() });
        }
        Ok(ExactMatrix { d, size, sqrt_d_exp, entries }.normalized())
    }

    pub fn from_fn(
        d: Dimension,
        size: usize,
        sqrt_d_exp: u32,
        mut f: impl FnMut(usize, usize) -> CycScalar,
    ) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for r in 0..size {
            for c in 0..size {
                entries.push(f(r, c));
            }
        }
        ExactMatrix { d, size, sqrt_d_exp, entries }.normalized()
    }

    pub fn zeros(d: Dimension, size: usize) -> Self {
        ExactMatrix { d, size, sqrt_d_exp: 0, entries: vec![CycScalar::zero(d); size * size] }
    }

    pub fn identity(d: Dimension, size: usize) -> Self {
        Self::from_fn(d, size, 0, |r, c| if r == c { CycScalar::one(d) } else { CycScalar::zero(d) })
    }

    /// Matrix with a single root of unity per row: row `r` holds `w^phase` at column `col`.
    pub(crate) fn from_phase_permutation(d: Dimension, rows: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut m = Self::zeros(d, d.size());
        for (r, (c, phase)) in rows.into_iter().enumerate() {
            m.entries[r * m.size + c] = CycScalar::root_power(d, phase);
        }
        m
    }

    #[inline]
    pub fn dimension(&self) -> Dimension {
        self.d
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn sqrt_d_exp(&self) -> u32 {
        self.sqrt_d_exp
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &CycScalar {
        &self.entries[r * self.size + c]
    }

    pub fn entries(&self) -> &[CycScalar] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[CycScalar] {
        &self.entries[r * self.size..(r + 1) * self.size]
    }

    /// Returns a copy with one entry replaced. Used by fault-injection harnesses.
    pub fn with_entry(mut self, r: usize, c: usize, value: CycScalar) -> Result<Self> {
        self.d.check_same(value.dimension())?;
        if r >= self.size || c >= self.size {
            return Err(Error::ShapeMismatch { left: self.shape(), right: (r + 1, c + 1) });
        }
        self.entries[r * self.size + c] = value;
        Ok(self)
    }

    fn shape(&self) -> (usize, usize) {
        (self.size, self.size)
    }

    fn normalized(mut self) -> Self {
        if self.sqrt_d_exp >= 2 {
            let inv = BigRational::new(BigInt::from(1), BigInt::from(self.d.get()).pow(self.sqrt_d_exp / 2));
            for e in &mut self.entries {
                if !e.is_zero() {
                    *e = e.scale(&inv);
                }
            }
            self.sqrt_d_exp %= 2;
        }
        self
    }

    fn check_compatible(&self, other: &ExactMatrix) -> Result<()> {
        self.d.check_same(other.d)?;
        if self.size != other.size {
            return Err(Error::ShapeMismatch { left: self.shape(), right: other.shape() });
        }
        Ok(())
    }

    fn check_exp(&self, other: &ExactMatrix) -> Result<()> {
        if self.sqrt_d_exp != other.sqrt_d_exp {
            return Err(Error::Incomparable { left: self.sqrt_d_exp, right: other.sqrt_d_exp });
        }
        Ok(())
    }

    /// Exact product. Prefactor exponents add before normalization.
    ///
    /// Zero entries are skipped and each output entry is accumulated as a raw cyclic
    /// convolution, canonicalized once at the end. Integer-valued operands take a
    /// machine-integer route with checked arithmetic; results are identical either way.
    pub fn matmul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_compatible(other)?;
        let sqrt_d_exp = self.sqrt_d_exp + other.sqrt_d_exp;
        if let Some(entries) = self.matmul_small(other, sqrt_d_exp) {
            return Ok(ExactMatrix { d: self.d, size: self.size, sqrt_d_exp: sqrt_d_exp % 2, entries });
        }
        Ok(self.matmul_rational(other))
    }

    fn matmul_rational(&self, other: &ExactMatrix) -> ExactMatrix {
        let sqrt_d_exp = self.sqrt_d_exp + other.sqrt_d_exp;
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            let row = self.row(r);
            for c in 0..n {
                let mut acc = CycScalar::zero(self.d);
                for (k, a) in row.iter().enumerate() {
                    let b = other.get(k, c);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        ExactMatrix { d: self.d, size: n, sqrt_d_exp, entries }.normalized()
    }

    /// Sparse `(power, coefficient)` terms of every entry, if all coefficients are integers
    /// that fit in `i64`.
    fn small_terms(&self) -> Option<Vec<Vec<(usize, i64)>>> {
        self.entries
            .iter()
            .map(|e| {
                if !e.denominator().is_one() {
                    return None;
                }
                e.numerators()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| c.to_i64().map(|v| (i, v)))
                    .collect()
            })
            .collect()
    }

    /// Integer-coefficient product accumulated in checked `i128`, with the `d^(-s/2)`
    /// normalization applied once per coefficient. `None` on overflow or non-integer input,
    /// in which case the caller falls back to rational arithmetic.
    fn matmul_small(&self, other: &ExactMatrix, sqrt_d_exp: u32) -> Option<Vec<CycScalar>> {
        let (a, b) = (self.small_terms()?, other.small_terms()?);
        let (n, dd) = (self.size, self.d.size());
        let divisor = BigInt::from(self.d.get()).pow(sqrt_d_exp / 2);
        let mut entries = Vec::with_capacity(n * n);
        let mut acc = vec![0i128; dd];
        for r in 0..n {
            for c in 0..n {
                acc.fill(0);
                for k in 0..n {
                    let (ta, tb) = (&a[r * n + k], &b[k * n + c]);
                    for &(i, x) in ta {
                        for &(j, y) in tb {
                            let slot = &mut acc[(i + j) % dd];
                            *slot = slot.checked_add(i128::from(x) * i128::from(y))?;
                        }
                    }
                }
                let last = acc[dd - 1];
                for v in acc.iter_mut() {
                    *v = v.checked_sub(last)?;
                }
                entries.push(CycScalar::from_canonical_ints(self.d, &acc, &divisor));
            }
        }
        Some(entries)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ExactMatrix {
        let n = self.size;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                entries.push(self.get(c, r).conj());
            }
        }
        ExactMatrix { d: self.d, size: n, sqrt_d_exp: self.sqrt_d_exp, entries }
    }

    /// Sum of the stored diagonal together with the prefactor exponent it must be read with.
    pub fn trace(&self) -> (CycScalar, u32) {
        let sum = (0..self.size).fold(CycScalar::zero(self.d), |acc, i| &acc + self.get(i, i));
        (sum, self.sqrt_d_exp)
    }

    /// Kronecker product. Entry `(i1*n2 + i2, j1*n2 + j2)` is `a(i1, j1) * b(i2, j2)`.
    pub fn tensor(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.d.check_same(other.d)?;
        let (n1, n2) = (self.size, other.size);
        let n = n1 * n2;
        let mut entries = vec![CycScalar::zero(self.d); n * n];
        for i1 in 0..n1 {
            for j1 in 0..n1 {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..n2 {
                    for j2 in 0..n2 {
                        let b = other.get(i2, j2);
                        if !b.is_zero() {
                            entries[(i1 * n2 + i2) * n + j1 * n2 + j2] = a * b;
                        }
                    }
                }
            }
        }
        Ok(ExactMatrix { d: self.d, size: n, sqrt_d_exp: self.sqrt_d_exp + other.sqrt_d_exp, entries }
            .normalized())
    }

    /// Hilbert-Schmidt inner product `Tr(a^dagger b)`. Both operands must be unscaled.
    pub fn hs_inner(&self, other: &ExactMatrix) -> Result<CycScalar> {
        self.check_compatible(other)?;
        for s in [self.sqrt_d_exp, other.sqrt_d_exp] {
            if s != 0 {
                return Err(Error::ScaledOperand(s));
            }
        }
        let mut acc = CycScalar::zero(self.d);
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(&a.conj() * b);
            }
        }
        Ok(acc)
    }

    pub fn scalar_mul(&self, c: &CycScalar) -> Result<ExactMatrix> {
        self.d.check_same(c.dimension())?;
        let entries = self
            .entries
            .iter()
            .map(|e| if e.is_zero() { e.clone() } else { e * c })
            .collect();
        Ok(ExactMatrix { d: self.d, size: self.size, sqrt_d_exp: self.sqrt_d_exp, entries })
    }

    pub fn scale_rational(&self, factor: &BigRational) -> ExactMatrix {
        let entries = self.entries.iter().map(|e| e.scale(factor)).collect();
        ExactMatrix { d: self.d, size: self.size, sqrt_d_exp: self.sqrt_d_exp, entries }
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    /// In-place sum, skipping zero entries of `other`.
    pub fn add_assign(&mut self, other: &ExactMatrix) -> Result<()> {
        self.check_compatible(other)?;
        self.check_exp(other)?;
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a = &*a + b;
            }
        }
        Ok(())
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_compatible(other)?;
        self.check_exp(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(ExactMatrix { d: self.d, size: self.size, sqrt_d_exp: self.sqrt_d_exp, entries })
    }

    /// Entrywise canonical equality. Mismatched prefactor exponents are an error, not `false`.
    pub fn try_eq(&self, other: &ExactMatrix) -> Result<bool> {
        self.check_compatible(other)?;
        self.check_exp(other)?;
        Ok(self.entries == other.entries)
    }

    /// First position where two comparable matrices differ.
    pub fn first_difference(&self, other: &ExactMatrix) -> Result<Option<(usize, usize)>> {
        self.check_compatible(other)?;
        self.check_exp(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|i| (i / self.size, i % self.size)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycScalar::is_zero)
    }

    /// For a monomial matrix whose nonzero entries are all roots of unity, returns
    /// `(column, exponent)` for each row.
    pub fn phase_permutation(&self) -> Option<Vec<(usize, u32)>> {
        let mut seen = vec![false; self.size];
        let mut out = Vec::with_capacity(self.size);
        for r in 0..self.size {
            let mut nonzero = self.row(r).iter().enumerate().filter(|(_, e)| !e.is_zero());
            let (c, e) = nonzero.next()?;
            if nonzero.next().is_some() || seen[c] {
                return None;
            }
            seen[c] = true;
            out.push((c, e.as_root_power()?));
        }
        Some(out)
    }

    /// `true` for a monomial matrix with root-of-unity entries and no prefactor.
    pub fn is_phase_permutation(&self) -> bool {
        self.sqrt_d_exp == 0 && self.phase_permutation().is_some()
    }

    /// Double-precision rendering of the represented matrix, prefactor included. Non-authoritative.
    pub fn to_complex(&self) -> Vec<Vec<(f64, f64)>> {
        let scale = f64::from(self.d.get()).powf(-f64::from(self.sqrt_d_exp) / 2.0);
        (0..self.size)
            .map(|r| {
                self.row(r)
                    .iter()
                    .map(|e| {
                        let (re, im) = e.to_complex();
                        (re * scale, im * scale)
                    })
                    .collect()
            })
            .collect()
    }
}
