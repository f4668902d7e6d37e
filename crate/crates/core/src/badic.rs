//! Fixed-precision base-b digit arithmetic.
//!
//! A [`DigitVector`] holds the first `m` base-b digits of a number in `[0,1)`,
//! most significant first: value = d1/b + d2/b^2 + ... + dm/b^m. Addition and
//! subtraction act digitwise modulo b, with no carries, so the set of m-digit
//! vectors forms an abelian group under [`DigitVector::add`]. The same
//! carry-free arithmetic is mirrored on integers below `b^m` by
//! [`int_digital_add`] and [`int_digital_sub`].
//!
//! Valuations measure leading agreement with zero: a fraction whose first k
//! digits vanish has valuation `b^-(k+1)`, an integer in `[b^k, b^(k+1))` has
//! valuation `b^k`, and zero is assigned valuation 0 in both cases.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// The first `m` base-b digits of a number in `[0,1)`, most significant first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVector {
    base: u32,
    digits: Vec<u8>,
}

impl DigitVector {
    /// Builds a digit vector, validating that every digit is below `base`.
    pub fn new(base: u32, digits: Vec<u8>) -> Result<Self> {
        if base < 2 {
            return Err(Error::BaseTooSmall(base));
        }
        for (position, &digit) in digits.iter().enumerate() {
            if u32::from(digit) >= base {
                return Err(Error::DigitOutOfRange { digit, position, base });
            }
        }
        Ok(DigitVector { base, digits })
    }

    /// The zero vector with the given precision.
    pub fn zeros(base: u32, precision: usize) -> Self {
        assert!(base >= 2, "base must be at least 2");
        DigitVector { base, digits: vec![0; precision] }
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Number of stored digits.
    pub fn precision(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    /// Digit at 1-based position `j` (the coefficient of b^-j).
    pub fn digit(&self, j: usize) -> u8 {
        self.digits[j - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// Exact value as a rational in `[0, 1)`.
    pub fn value(&self) -> BigRational {
        let base = BigInt::from(self.base);
        let mut numerator = BigInt::zero();
        for &d in &self.digits {
            numerator = numerator * &base + BigInt::from(d);
        }
        BigRational::new(numerator, base.pow(self.digits.len() as u32))
    }

    /// Keeps the first `m` digits. `m` may not exceed the precision.
    pub fn truncated(&self, m: usize) -> Result<Self> {
        if m > self.digits.len() {
            return Err(Error::TruncationTooLong { requested: m, precision: self.digits.len() });
        }
        Ok(DigitVector { base: self.base, digits: self.digits[..m].to_vec() })
    }

    /// Extends with trailing zeros to precision `m` (which preserves the value).
    pub fn padded(&self, m: usize) -> Result<Self> {
        if m < self.digits.len() {
            return Err(Error::PaddingTooShort { requested: m, precision: self.digits.len() });
        }
        let mut digits = self.digits.clone();
        digits.resize(m, 0);
        Ok(DigitVector { base: self.base, digits })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(self.base, other.base));
        }
        if self.digits.len() != other.digits.len() {
            return Err(Error::PrecisionMismatch(self.digits.len(), other.digits.len()));
        }
        Ok(())
    }

    /// Digitwise sum modulo b (no carries).
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let base = self.base as u16;
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .map(|(&a, &b)| ((u16::from(a) + u16::from(b)) % base) as u8)
            .collect();
        Ok(DigitVector { base: self.base, digits })
    }

    /// Digitwise difference modulo b.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let base = self.base as i16;
        let digits = self
            .digits
            .iter()
            .zip(&other.digits)
            .map(|(&a, &b)| ((i16::from(a) - i16::from(b)).rem_euclid(base)) as u8)
            .collect();
        Ok(DigitVector { base: self.base, digits })
    }

    /// Digitwise additive inverse modulo b.
    pub fn negated(&self) -> Self {
        let base = self.base as u16;
        let digits = self
            .digits
            .iter()
            .map(|&a| if a == 0 { 0 } else { (base - u16::from(a)) as u8 })
            .collect();
        DigitVector { base: self.base, digits }
    }

    /// Number of leading zero digits (equals the precision for the zero vector).
    pub fn leading_zeros(&self) -> usize {
        self.digits.iter().take_while(|&&d| d == 0).count()
    }

    /// Compares the represented values. Precisions may differ; the shorter
    /// expansion is read as zero-extended, so `2:01` equals `2:0100`.
    pub fn cmp_value(&self, other: &Self) -> Result<std::cmp::Ordering> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(self.base, other.base));
        }
        let len = self.digits.len().max(other.digits.len());
        for j in 0..len {
            let a = self.digits.get(j).copied().unwrap_or(0);
            let b = other.digits.get(j).copied().unwrap_or(0);
            if a != b {
                return Ok(a.cmp(&b));
            }
        }
        Ok(std::cmp::Ordering::Equal)
    }

    /// Exponent v such that the valuation is b^v, or `None` for the zero vector.
    pub fn valuation_exponent(&self) -> Option<i64> {
        let k = self.leading_zeros();
        if k == self.digits.len() {
            None
        } else {
            Some(-(k as i64) - 1)
        }
    }

    /// Valuation b^-(k+1) where k counts leading zero digits; 0 for the zero vector.
    pub fn valuation(&self) -> BigRational {
        match self.valuation_exponent() {
            None => BigRational::zero(),
            Some(v) => power_rational(self.base, v),
        }
    }
}

/// b^exponent as an exact rational (exponent may be negative).
pub fn power_rational(base: u32, exponent: i64) -> BigRational {
    let b = BigInt::from(base);
    if exponent >= 0 {
        BigRational::from_integer(b.pow(exponent as u32))
    } else {
        BigRational::new(BigInt::one(), b.pow((-exponent) as u32))
    }
}

impl fmt::Display for DigitVector {
    /// Canonical text `b:d1d2...dm`, one character per digit (bases up to 10).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.base)?;
        for &d in &self.digits {
            write!(f, "{}", d)?;
        }
        Ok(())
    }
}

impl FromStr for DigitVector {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let (base_text, digit_text) = text
            .split_once(':')
            .ok_or_else(|| Error::Parse(text.to_string(), "digit vector (expected b:digits)"))?;
        let base: u32 = base_text
            .parse()
            .map_err(|_| Error::Parse(text.to_string(), "digit vector base"))?;
        if base < 2 {
            return Err(Error::BaseTooSmall(base));
        }
        if base > 10 {
            return Err(Error::BaseNotPrintable(base));
        }
        let mut digits = Vec::with_capacity(digit_text.len());
        for ch in digit_text.chars() {
            let d = ch
                .to_digit(10)
                .ok_or_else(|| Error::Parse(text.to_string(), "digit vector digits"))?;
            digits.push(d as u8);
        }
        DigitVector::new(base, digits)
    }
}

/// A point in `[0,1)^s`: one digit vector per coordinate, sharing base and
/// precision.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    coords: Vec<DigitVector>,
}

impl Point {
    pub fn new(coords: Vec<DigitVector>) -> Result<Self> {
        let first = coords.first().ok_or(Error::EmptyPoint)?;
        let (base, precision) = (first.base(), first.precision());
        for c in &coords {
            if c.base() != base {
                return Err(Error::BaseMismatch(base, c.base()));
            }
            if c.precision() != precision {
                return Err(Error::PrecisionMismatch(precision, c.precision()));
            }
        }
        Ok(Point { coords })
    }

    /// Origin of `[0,1)^dim` at the given precision.
    pub fn origin(base: u32, dim: usize, precision: usize) -> Self {
        Point { coords: vec![DigitVector::zeros(base, precision); dim] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn base(&self) -> u32 {
        self.coords[0].base()
    }

    pub fn precision(&self) -> usize {
        self.coords[0].precision()
    }

    pub fn coords(&self) -> &[DigitVector] {
        &self.coords
    }

    /// Coordinate `i`, 0-based.
    pub fn coord(&self, i: usize) -> &DigitVector {
        &self.coords[i]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(Point { coords })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(Point { coords })
    }

    pub fn truncated(&self, m: usize) -> Result<Self> {
        let coords = self.coords.iter().map(|c| c.truncated(m)).collect::<Result<_>>()?;
        Ok(Point { coords })
    }

    /// Product of coordinate valuations; 0 when any coordinate is zero.
    pub fn valuation_product(&self) -> BigRational {
        match self.valuation_product_exponent() {
            None => BigRational::zero(),
            Some(v) => power_rational(self.base(), v),
        }
    }

    /// Exponent of the valuation product, or `None` when it is 0.
    pub fn valuation_product_exponent(&self) -> Option<i64> {
        let mut total = 0i64;
        for c in &self.coords {
            total += c.valuation_exponent()?;
        }
        Some(total)
    }
}

/// b^m, refusing to overflow u64.
pub fn int_width(base: u32, m: usize) -> Result<u64> {
    let m_u32 = u32::try_from(m).map_err(|_| Error::WidthOverflow { base, m })?;
    u64::from(base)
        .checked_pow(m_u32)
        .ok_or(Error::WidthOverflow { base, m })
}

/// Base-b digits of `n`, least significant first, padded to length `m`.
pub fn int_digits_lsb(n: u64, base: u32, m: usize) -> Result<Vec<u8>> {
    let width = int_width(base, m)?;
    if n >= width {
        return Err(Error::IntTooWide { n, base, m });
    }
    let b = u64::from(base);
    let mut rest = n;
    let mut digits = Vec::with_capacity(m);
    for _ in 0..m {
        digits.push((rest % b) as u8);
        rest /= b;
    }
    Ok(digits)
}

/// Carry-free sum of integers below b^m: digitwise addition modulo b.
pub fn int_digital_add(n1: u64, n2: u64, base: u32, m: usize) -> Result<u64> {
    let d1 = int_digits_lsb(n1, base, m)?;
    let d2 = int_digits_lsb(n2, base, m)?;
    let b = u64::from(base);
    let mut out = 0u64;
    for (&a, &c) in d1.iter().zip(&d2).rev() {
        out = out * b + (u64::from(a) + u64::from(c)) % b;
    }
    Ok(out)
}

/// Carry-free difference of integers below b^m: digitwise subtraction modulo b.
pub fn int_digital_sub(n1: u64, n2: u64, base: u32, m: usize) -> Result<u64> {
    let d1 = int_digits_lsb(n1, base, m)?;
    let d2 = int_digits_lsb(n2, base, m)?;
    let b = i64::from(base);
    let mut out = 0u64;
    for (&a, &c) in d1.iter().zip(&d2).rev() {
        out = out * b as u64 + (i64::from(a) - i64::from(c)).rem_euclid(b) as u64;
    }
    Ok(out)
}

/// Integer valuation: the largest power b^k with b^k <= n, and 0 for n = 0.
pub fn int_valuation(n: u64, base: u32) -> u64 {
    match int_valuation_exponent(n, base) {
        None => 0,
        Some(k) => u64::from(base).pow(k),
    }
}

/// Exponent k with b^k <= n < b^(k+1), or `None` for n = 0.
pub fn int_valuation_exponent(n: u64, base: u32) -> Option<u32> {
    if n == 0 {
        return None;
    }
    let b = u64::from(base);
    let mut k = 0u32;
    let mut power = 1u64;
    while let Some(next) = power.checked_mul(b) {
        if next > n {
            break;
        }
        power = next;
        k += 1;
    }
    Some(k)
}
