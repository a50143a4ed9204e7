//! Exact arithmetic in the cyclotomic field `Q(w)`, `w = exp(2*pi*i/d)`, for an odd prime `d`.
//!
//! An element is stored as a length-`d` vector of rationals `c` meaning `sum_i c[i] * w^i`.
//! Because `1 + w + ... + w^(d-1) = 0`, that vector is only unique up to adding a constant to
//! every slot; the canonical representative is the one with `c[d-1] = 0`. With that
//! normalization structural equality is field equality.
//!
//! Multiplication is cyclic convolution (valid in `Q[x]/(x^d - 1)`, which maps onto the field),
//! followed by canonicalization. Conjugation is the index permutation `i -> -i mod d`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Hilbert-space dimension. Always an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dimension(u32);

impl Dimension {
    pub fn new(d: u32) -> Result<Self> {
        if d > 2 && is_prime(u64::from(d)) {
            Ok(Dimension(d))
        } else {
            Err(Error::InvalidDimension { value: u64::from(d) })
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn size(self) -> usize {
        self.0 as usize
    }

    /// Reduces any integer into `0..d`.
    #[inline]
    pub fn reduce(self, e: i64) -> u32 {
        e.rem_euclid(i64::from(self.0)) as u32
    }

    /// The inverse of 2 modulo `d`, i.e. `(d + 1) / 2`.
    #[inline]
    pub fn half(self) -> u32 {
        self.0.div_ceil(2)
    }

    pub(crate) fn check_same(self, other: Dimension) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { left: self.0, right: other.0 })
        }
    }
}

impl TryFrom<u32> for Dimension {
    type Error = Error;

    fn try_from(d: u32) -> Result<Self> {
        Dimension::new(d)
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Deterministic trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut k = 3u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 2;
    }
    true
}

/// All supported dimensions `3 <= d <= max`.
pub fn odd_primes_up_to(max: u32) -> Vec<u32> {
    (3..=max).filter(|&p| is_prime(u64::from(p))).collect()
}

/// An element of `Q(w)`.
///
/// Stored as integer numerators over one shared positive denominator, reduced so that the
/// gcd of the denominator and all numerators is 1, with the last numerator forced to zero.
/// [`coeffs`](Self::coeffs) exposes the individually reduced rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    d: Dimension,
    numer: Vec<BigInt>,
    denom: BigInt,
}

impl CycScalar {
    pub fn zero(d: Dimension) -> Self {
        CycScalar { d, numer: vec![BigInt::zero(); d.size()], denom: BigInt::one() }
    }

    pub fn one(d: Dimension) -> Self {
        Self::from_integer(d, 1)
    }

    pub fn from_integer(d: Dimension, value: i64) -> Self {
        let mut s = Self::zero(d);
        s.numer[0] = BigInt::from(value);
        s
    }

    pub fn from_rational(d: Dimension, value: BigRational) -> Self {
        let (n, den) = value.into();
        let mut numer = vec![BigInt::zero(); d.size()];
        numer[0] = n;
        Self::from_parts(d, numer, den)
    }

    /// `w^e`, with `e` taken mod `d`.
    pub fn root_power(d: Dimension, e: i64) -> Self {
        let e = d.reduce(e) as usize;
        let mut numer = vec![BigInt::zero(); d.size()];
        numer[e] = BigInt::one();
        Self::from_parts(d, numer, BigInt::one())
    }

    /// Builds a scalar from any (not necessarily canonical) coefficient vector of length `d`.
    pub fn from_coeffs(d: Dimension, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != d.size() {
            return Err(Error::LengthMismatch { expected: d.size(), found: coeffs.len() });
        }
        let denom = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let numer = coeffs.iter().map(|c| c.numer() * (&denom / c.denom())).collect();
        Ok(Self::from_parts(d, numer, denom))
    }

    /// Canonicalizes `numer / denom`. `denom` must be nonzero.
    fn from_parts(d: Dimension, mut numer: Vec<BigInt>, mut denom: BigInt) -> Self {
        debug_assert_eq!(numer.len(), d.size());
        debug_assert!(!denom.is_zero());
        let last = numer[numer.len() - 1].clone();
        if !last.is_zero() {
            for c in numer.iter_mut() {
                *c -= &last;
            }
        }
        if denom.is_negative() {
            denom = -denom;
            numer.iter_mut().for_each(|c| *c = -&*c);
        }
        if !denom.is_one() {
            let g = numer.iter().fold(denom.clone(), |g, c| if c.is_zero() { g } else { g.gcd(c) });
            if !g.is_one() {
                numer.iter_mut().for_each(|c| *c /= &g);
                denom /= &g;
            }
        }
        if numer.iter().all(Zero::is_zero) {
            denom = BigInt::one();
        }
        CycScalar { d, numer, denom }
    }

    /// `coeffs[i] / divisor` from integers that are already canonical (`coeffs[d-1] = 0`).
    pub(crate) fn from_canonical_ints(d: Dimension, coeffs: &[i128], divisor: &BigInt) -> Self {
        debug_assert!(coeffs.len() == d.size() && coeffs[d.size() - 1] == 0);
        let numer = coeffs.iter().map(|&v| BigInt::from(v)).collect();
        Self::from_parts(d, numer, divisor.clone())
    }

    #[inline]
    pub fn dimension(&self) -> Dimension {
        self.d
    }

    /// Canonical coefficients; index `i` multiplies `w^i` and the last entry is always zero.
    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.numer.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.numer[i].clone(), self.denom.clone())
    }

    /// Numerators over the shared [`denominator`](Self::denominator).
    #[inline]
    pub fn numerators(&self) -> &[BigInt] {
        &self.numer
    }

    #[inline]
    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.denom.is_one() && self.numer[0].is_one() && self.numer[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the scalar lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.numer[1..].iter().all(Zero::is_zero).then(|| self.coeff(0))
    }

    /// Returns `e` in `0..d` if the scalar equals `w^e`.
    pub fn as_root_power(&self) -> Option<u32> {
        if !self.denom.is_one() {
            return None;
        }
        let n = self.numer.len();
        let mut nonzero = self.numer.iter().enumerate().filter(|(_, c)| !c.is_zero());
        match (nonzero.next(), nonzero.next()) {
            (Some((i, c)), None) if c.is_one() => Some(i as u32),
            // w^(d-1) = -(1 + w + ... + w^(d-2))
            _ if self.numer[..n - 1].iter().all(|c| *c == -BigInt::one()) => Some((n - 1) as u32),
            _ => None,
        }
    }

    fn combine(&self, rhs: &CycScalar, op: impl Fn(&BigInt, &BigInt) -> BigInt) -> CycScalar {
        if self.denom == rhs.denom {
            let numer = self.numer.iter().zip(&rhs.numer).map(|(a, b)| op(a, b)).collect();
            Self::from_parts(self.d, numer, self.denom.clone())
        } else {
            let numer =
                self.numer.iter().zip(&rhs.numer).map(|(a, b)| op(&(a * &rhs.denom), &(b * &self.denom))).collect();
            Self::from_parts(self.d, numer, &self.denom * &rhs.denom)
        }
    }

    pub fn checked_add(&self, rhs: &CycScalar) -> Result<CycScalar> {
        self.d.check_same(rhs.d)?;
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        Ok(self.combine(rhs, |a, b| a + b))
    }

    pub fn checked_sub(&self, rhs: &CycScalar) -> Result<CycScalar> {
        self.d.check_same(rhs.d)?;
        Ok(self.combine(rhs, |a, b| a - b))
    }

    /// Cyclic convolution of the numerators, then canonicalization.
    pub fn checked_mul(&self, rhs: &CycScalar) -> Result<CycScalar> {
        self.d.check_same(rhs.d)?;
        let n = self.numer.len();
        let mut acc = vec![BigInt::zero(); n];
        for (i, a) in self.numer.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, b) in rhs.numer.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                acc[(i + j) % n] += a * b;
            }
        }
        Ok(Self::from_parts(self.d, acc, &self.denom * &rhs.denom))
    }

    /// Decidable equality; errors when the operands live in different fields.
    pub fn try_eq(&self, rhs: &CycScalar) -> Result<bool> {
        self.d.check_same(rhs.d)?;
        Ok(self == rhs)
    }

    pub fn conj(&self) -> CycScalar {
        let n = self.numer.len();
        let mut numer = vec![BigInt::zero(); n];
        for (i, c) in self.numer.iter().enumerate() {
            numer[(n - i) % n] = c.clone();
        }
        Self::from_parts(self.d, numer, self.denom.clone())
    }

    pub fn scale(&self, factor: &BigRational) -> CycScalar {
        let numer = self.numer.iter().map(|c| c * factor.numer()).collect();
        Self::from_parts(self.d, numer, &self.denom * factor.denom())
    }

    /// Double-precision evaluation of `sum_i c[i] * exp(2*pi*i*i/d)`. Cross-checking only.
    pub fn to_complex(&self) -> (f64, f64) {
        let d = f64::from(self.d.get());
        (0..self.numer.len())
            .filter(|&i| !self.numer[i].is_zero())
            .fold((0.0, 0.0), |(re, im), i| {
                let c = self.coeff(i).to_f64().unwrap_or(f64::NAN);
                let theta = 2.0 * PI * i as f64 / d;
                (re + c * theta.cos(), im + c * theta.sin())
            })
    }

    /// Canonical coefficients as `p/q` strings (`q` omitted when 1).
    pub fn to_coeff_strings(&self) -> Vec<String> {
        self.coeffs().iter().map(ToString::to_string).collect()
    }

    /// Inverse of [`to_coeff_strings`](Self::to_coeff_strings).
    pub fn from_coeff_strings<S: AsRef<str>>(d: Dimension, coeffs: &[S]) -> Result<Self> {
        let parsed = coeffs
            .iter()
            .map(|s| {
                s.as_ref().trim().parse::<BigRational>().map_err(|_| {
                    Error::Verification(format!("malformed rational coefficient `{}`", s.as_ref()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_coeffs(d, parsed)
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycScalar(d={}, {})", self.d, self)
    }
}

/// Renders the coefficient vector, e.g. `[-1, -1, 0]` for `w^2` at `d = 3`.
impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

// The operator impls panic on a dimension mismatch; use the `checked_*` methods when the
// operands come from untrusted sources.

impl Add for &CycScalar {
    type Output = CycScalar;

    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.checked_add(rhs).expect("cyclotomic add")
    }
}

impl Sub for &CycScalar {
    type Output = CycScalar;

    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.checked_sub(rhs).expect("cyclotomic sub")
    }
}

impl Mul for &CycScalar {
    type Output = CycScalar;

    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.checked_mul(rhs).expect("cyclotomic mul")
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;

    fn neg(self) -> CycScalar {
        CycScalar { d: self.d, numer: self.numer.iter().map(|c| -c).collect(), denom: self.denom.clone() }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;

    fn neg(self) -> CycScalar {
        -&self
    }
}
