//! Polynomial arithmetic over a prime field GF(p).
//!
//! Just enough ring machinery for the generating-matrix construction:
//! multiplication, euclidean division, trial-division irreducibility, and
//! extraction of Laurent coefficients of f/g in powers of 1/x. Coefficients
//! are stored lowest degree first with no trailing zeros; the zero polynomial
//! is the empty list.

use std::fmt;

use crate::error::{Error, Result};

/// Primality by trial division; the moduli here are single-digit bases.
pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u32;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// A polynomial over GF(p), coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeFieldPoly {
    modulus: u32,
    coeffs: Vec<u32>,
}

impl PrimeFieldPoly {
    /// Builds a polynomial, reducing coefficients mod p and trimming trailing
    /// zeros. Rejects non-prime moduli: the division routines assume a field.
    pub fn new(modulus: u32, coeffs: Vec<u32>) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::BaseNotPrime(modulus));
        }
        let mut coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % modulus).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(PrimeFieldPoly { modulus, coeffs })
    }

    pub fn zero(modulus: u32) -> Result<Self> {
        Self::new(modulus, vec![])
    }

    pub fn one(modulus: u32) -> Result<Self> {
        Self::new(modulus, vec![1])
    }

    /// x^degree.
    pub fn monomial(modulus: u32, degree: usize) -> Result<Self> {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = 1;
        Self::new(modulus, coeffs)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Coefficient of x^k (0 beyond the stored length).
    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    fn check_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Self::new(self.modulus, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| self.coeff(k) + self.modulus - other.coeff(k) % self.modulus)
            .collect();
        Self::new(self.modulus, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.modulus);
        }
        let p = u64::from(self.modulus);
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + u64::from(a) * u64::from(b)) % p;
            }
        }
        Self::new(self.modulus, acc.into_iter().map(|c| c as u32).collect())
    }

    pub fn pow(&self, exponent: u32) -> Result<Self> {
        let mut out = Self::one(self.modulus)?;
        for _ in 0..exponent {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Euclidean division: returns (q, r) with self = q*divisor + r and
    /// deg r < deg divisor.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        self.check_modulus(divisor)?;
        if divisor.is_zero() {
            return Err(Error::PolyDivisionByZero);
        }
        let p = self.modulus;
        let dd = divisor.coeffs.len() - 1;
        let lead_inv = mod_inverse(*divisor.coeffs.last().unwrap(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(p)?, self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let factor = mulp(rem[k], lead_inv, p);
            if factor == 0 {
                continue;
            }
            quot[k - dd] = factor;
            for (j, &dc) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = (rem[idx] + p - mulp(factor, dc, p)) % p;
            }
        }
        Ok((Self::new(p, quot)?, Self::new(p, rem)?))
    }

    /// True iff the polynomial has no nontrivial monic factor. Trial division
    /// against every monic polynomial of degree at most deg/2; fine at the
    /// single-digit degrees used here.
    pub fn is_irreducible(&self) -> Result<bool> {
        let deg = match self.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::ConstantPolynomial(self.to_string())),
        };
        for dd in 1..=deg / 2 {
            for divisor in monic_polys_of_degree(self.modulus, dd)? {
                let (_, r) = self.divmod(&divisor)?;
                if r.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Coefficient text `p:[c0,c1,...]`, lowest degree first.
    pub fn to_coeff_text(&self) -> String {
        let inner: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("{}:[{}]", self.modulus, inner.join(","))
    }

    /// Parses either the human form (`x^2+2x+1`) or the coefficient form
    /// (`p:[c0,c1,...]`). The expected modulus comes from context; in the
    /// coefficient form the embedded modulus must agree with it.
    pub fn parse(text: &str, modulus: u32) -> Result<Self> {
        let text = text.trim();
        if let Some((head, tail)) = text.split_once(":[") {
            let embedded: u32 = head
                .trim()
                .parse()
                .map_err(|_| Error::Parse(text.to_string(), "polynomial modulus"))?;
            if embedded != modulus {
                return Err(Error::ModulusMismatch(modulus, embedded));
            }
            let body = tail
                .strip_suffix(']')
                .ok_or_else(|| Error::Parse(text.to_string(), "polynomial coefficient list"))?;
            let mut coeffs = Vec::new();
            if !body.trim().is_empty() {
                for piece in body.split(',') {
                    let c: u32 = piece
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(text.to_string(), "polynomial coefficient"))?;
                    coeffs.push(c);
                }
            }
            return Self::new(modulus, coeffs);
        }
        Self::parse_human(text, modulus)
    }

    fn parse_human(text: &str, modulus: u32) -> Result<Self> {
        if !is_prime(modulus) {
            return Err(Error::BaseNotPrime(modulus));
        }
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse(text.to_string(), "polynomial"));
        }
        let bad = || Error::Parse(text.to_string(), "polynomial");
        let mut coeffs: Vec<u32> = Vec::new();
        let mut rest = compact.as_str();
        let mut sign_plus = true;
        if let Some(r) = rest.strip_prefix('-') {
            sign_plus = false;
            rest = r;
        }
        loop {
            let term_end = rest.find(['+', '-']).unwrap_or(rest.len());
            let (term, tail) = rest.split_at(term_end);
            if term.is_empty() {
                return Err(bad());
            }
            let (coef_text, exp) = match term.split_once('x') {
                None => (term, 0usize),
                Some((c, power)) => {
                    let exp = if power.is_empty() {
                        1
                    } else {
                        power
                            .strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(bad)?
                    };
                    (c, exp)
                }
            };
            let coef: u32 = if coef_text.is_empty() {
                if exp == 0 {
                    return Err(bad());
                }
                1
            } else {
                coef_text.parse().map_err(|_| bad())?
            };
            let coef = coef % modulus;
            let signed = if sign_plus { coef } else { (modulus - coef) % modulus };
            if coeffs.len() <= exp {
                coeffs.resize(exp + 1, 0);
            }
            coeffs[exp] = (coeffs[exp] + signed) % modulus;
            match tail.chars().next() {
                None => break,
                Some('+') => {
                    sign_plus = true;
                    rest = &tail[1..];
                }
                Some('-') => {
                    sign_plus = false;
                    rest = &tail[1..];
                }
                _ => unreachable!(),
            }
        }
        Self::new(modulus, coeffs)
    }
}

impl fmt::Display for PrimeFieldPoly {
    /// Human form, highest degree first: `x^2+2x+1`, `x`, `1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match exp {
                0 => write!(f, "{}", c)?,
                1 if c == 1 => write!(f, "x")?,
                1 => write!(f, "{}x", c)?,
                _ if c == 1 => write!(f, "x^{}", exp)?,
                _ => write!(f, "{}x^{}", c, exp)?,
            }
        }
        Ok(())
    }
}

fn mulp(a: u32, b: u32, p: u32) -> u32 {
    ((u64::from(a) * u64::from(b)) % u64::from(p)) as u32
}

/// a^-1 mod p for prime p (Fermat), a != 0.
fn mod_inverse(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut result = 1u32;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mulp(result, base, p);
        }
        base = mulp(base, base, p);
        exp >>= 1;
    }
    result
}

/// All monic polynomials of exactly the given degree over GF(p).
pub fn monic_polys_of_degree(modulus: u32, degree: usize) -> Result<Vec<PrimeFieldPoly>> {
    if !is_prime(modulus) {
        return Err(Error::BaseNotPrime(modulus));
    }
    let p = u64::from(modulus);
    let count = p.pow(degree as u32);
    let mut out = Vec::with_capacity(count as usize);
    for n in 0..count {
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut rest = n;
        for _ in 0..degree {
            coeffs.push((rest % p) as u32);
            rest /= p;
        }
        coeffs.push(1);
        out.push(PrimeFieldPoly::new(modulus, coeffs)?);
    }
    Ok(out)
}

/// First `count` coefficients a_1, a_2, ... of the expansion
/// num/den = sum_k a_k x^-k in powers of 1/x.
///
/// Computed exactly: a_k is the coefficient of x^(count-k) in the euclidean
/// quotient of num*x^count by den.
pub fn laurent_coeffs(
    num: &PrimeFieldPoly,
    den: &PrimeFieldPoly,
    count: usize,
) -> Result<Vec<u32>> {
    if den.is_zero() {
        return Err(Error::PolyDivisionByZero);
    }
    let shifted = num.mul(&PrimeFieldPoly::monomial(num.modulus(), count)?)?;
    let (q, _) = shifted.divmod(den)?;
    Ok((1..=count).map(|k| q.coeff(count - k)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(text: &str, p: u32) -> PrimeFieldPoly {
        PrimeFieldPoly::parse(text, p).unwrap()
    }

    #[test]
    fn primality_of_small_numbers() {
        let primes: Vec<u32> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn construction_normalizes() {
        let f = PrimeFieldPoly::new(3, vec![4, 5, 0, 0]).unwrap();
        assert_eq!(f.coeffs(), &[1, 2]);
        assert_eq!(f.degree(), Some(1));
        assert!(PrimeFieldPoly::new(4, vec![1]).is_err());
        assert!(PrimeFieldPoly::zero(2).unwrap().is_zero());
        assert_eq!(PrimeFieldPoly::zero(2).unwrap().degree(), None);
    }

    #[test]
    fn multiplication_examples() {
        // (x+1)^2 = x^2+1 over GF(2)
        let f = poly("x+1", 2);
        assert_eq!(f.mul(&f).unwrap(), poly("x^2+1", 2));
        let g = poly("x^2+2x+1", 3);
        assert_eq!(g.mul(&PrimeFieldPoly::one(3).unwrap()).unwrap(), g);
        assert!(g.mul(&PrimeFieldPoly::zero(3).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn divmod_examples() {
        let (q, r) = poly("x^2+1", 2).divmod(&poly("x+1", 2)).unwrap();
        assert_eq!(q, poly("x+1", 2));
        assert!(r.is_zero());
        let (q, r) = poly("x^3+2", 3).divmod(&poly("x^2+1", 3)).unwrap();
        assert_eq!(q, poly("x", 3));
        assert_eq!(r, poly("2x+2", 3));
        assert_eq!(
            poly("x", 2).divmod(&PrimeFieldPoly::zero(2).unwrap()),
            Err(Error::PolyDivisionByZero)
        );
    }

    #[test]
    fn irreducibility_examples() {
        assert!(poly("x^2+x+1", 2).is_irreducible().unwrap());
        assert!(!poly("x^2+1", 2).is_irreducible().unwrap());
        assert!(poly("x", 3).is_irreducible().unwrap());
        assert!(poly("x^2+1", 3).is_irreducible().unwrap());
        assert!(matches!(
            poly("1", 2).is_irreducible(),
            Err(Error::ConstantPolynomial(_))
        ));
    }

    #[test]
    fn irreducible_counts_match_the_necklace_formula() {
        // number of monic irreducibles of degree n over GF(p):
        // (1/n) sum_{d|n} mu(d) p^(n/d)
        let expected = |p: u64, n: u32| -> u64 {
            let mu = [0i64, 1, -1, -1, 0, -1, 1]; // mu(1..=6)
            let mut total = 0i64;
            for d in 1..=n {
                if n.is_multiple_of(d) {
                    total += mu[d as usize] * p.pow(n / d) as i64;
                }
            }
            (total / i64::from(n)) as u64
        };
        for p in [2u32, 3] {
            for deg in 1..=6usize {
                let count = monic_polys_of_degree(p, deg)
                    .unwrap()
                    .iter()
                    .filter(|f| f.is_irreducible().unwrap())
                    .count() as u64;
                assert_eq!(count, expected(u64::from(p), deg as u32), "p={} deg={}", p, deg);
            }
        }
    }

    #[test]
    fn laurent_coefficient_examples() {
        let one = PrimeFieldPoly::one(2).unwrap();
        assert_eq!(laurent_coeffs(&one, &poly("x", 2), 3).unwrap(), vec![1, 0, 0]);
        assert_eq!(laurent_coeffs(&one, &poly("x+1", 2), 4).unwrap(), vec![1, 1, 1, 1]);
        let zero = PrimeFieldPoly::zero(2).unwrap();
        assert_eq!(laurent_coeffs(&zero, &poly("x^2+x+1", 2), 5).unwrap(), vec![0; 5]);
        // x/(x^2+x+1) and 1/(x^2+x+1) over GF(2): period-3 patterns
        assert_eq!(
            laurent_coeffs(&poly("x", 2), &poly("x^2+x+1", 2), 6).unwrap(),
            vec![1, 1, 0, 1, 1, 0]
        );
        assert_eq!(
            laurent_coeffs(&one, &poly("x^2+x+1", 2), 6).unwrap(),
            vec![0, 1, 1, 0, 1, 1]
        );
        // x/(x^2+1) over GF(3): alternating 1, -1 on odd powers
        assert_eq!(
            laurent_coeffs(&poly("x", 3), &poly("x^2+1", 3), 6).unwrap(),
            vec![1, 0, 2, 0, 1, 0]
        );
    }

    #[test]
    fn laurent_expansion_multiplies_back() {
        // den * (sum_k a_k x^(count-k)) must agree with num * x^count on every
        // power in [deg(den), count): below that sits the division remainder,
        // at count and above sit the non-negative powers of the expansion.
        for (num, den, p) in [
            ("x", "x^2+x+1", 2u32),
            ("1", "x^3+x+1", 2),
            ("x+2", "x^2+1", 3),
            ("x^2", "x^2+x+2", 3),
        ] {
            let num = poly(num, p);
            let den = poly(den, p);
            let count = 12usize;
            let a = laurent_coeffs(&num, &den, count).unwrap();
            let mut partial_coeffs = vec![0u32; count];
            for (k, &ak) in a.iter().enumerate() {
                partial_coeffs[count - 1 - k] = ak;
            }
            let partial = PrimeFieldPoly::new(p, partial_coeffs).unwrap();
            let back = den.mul(&partial).unwrap();
            let target = num.mul(&PrimeFieldPoly::monomial(p, count).unwrap()).unwrap();
            for j in den.degree().unwrap()..count {
                assert_eq!(back.coeff(j), target.coeff(j), "power {}", j);
            }
        }
    }

    #[test]
    fn parse_and_render_round_trip() {
        for (text, p) in [
            ("x^2+x+1", 2u32),
            ("x", 2),
            ("x+1", 2),
            ("1", 3),
            ("x^2+2x+2", 3),
            ("x^3+2", 3),
            ("2x^4+x", 5),
        ] {
            let f = poly(text, p);
            assert_eq!(f.to_string(), text);
            assert_eq!(PrimeFieldPoly::parse(&f.to_coeff_text(), p).unwrap(), f);
        }
        assert_eq!(poly("x + 1", 2), poly("x+1", 2));
        assert_eq!(poly("3x^2+4x+5", 3), poly("x+2", 3));
        assert_eq!(poly("x^2-1", 3), poly("x^2+2", 3));
        assert_eq!(poly("2:[1,1,1]", 2), poly("x^2+x+1", 2));
        assert_eq!(poly("3:[]", 3), PrimeFieldPoly::zero(3).unwrap());
        assert_eq!(
            PrimeFieldPoly::parse("3:[1,2]", 2),
            Err(Error::ModulusMismatch(2, 3))
        );
        assert!(PrimeFieldPoly::parse("x^+1", 2).is_err());
        assert!(PrimeFieldPoly::parse("", 2).is_err());
        assert!(PrimeFieldPoly::parse("y+1", 2).is_err());
    }

    #[test]
    fn pow_matches_repeated_mul() {
        let f = poly("x+1", 2);
        assert_eq!(f.pow(0).unwrap(), PrimeFieldPoly::one(2).unwrap());
        assert_eq!(f.pow(2).unwrap(), poly("x^2+1", 2));
        assert_eq!(f.pow(3).unwrap(), poly("x^3+x^2+x+1", 2));
    }

    proptest! {
        #[test]
        fn divmod_round_trips(p in prop::sample::select(vec![2u32, 3, 5]),
                              a_seed in prop::collection::vec(0u32..5, 0..8),
                              b_seed in prop::collection::vec(0u32..5, 1..5)) {
            let a = PrimeFieldPoly::new(p, a_seed).unwrap();
            let b = PrimeFieldPoly::new(p, b_seed).unwrap();
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(q.mul(&b).unwrap().add(&r).unwrap(), a);
            if let (Some(rd), Some(bd)) = (r.degree(), b.degree()) {
                prop_assert!(rd < bd);
            }
        }

        #[test]
        fn sub_inverts_add(p in prop::sample::select(vec![2u32, 3, 5]),
                           a_seed in prop::collection::vec(0u32..5, 0..8),
                           b_seed in prop::collection::vec(0u32..5, 0..8)) {
            let a = PrimeFieldPoly::new(p, a_seed).unwrap();
            let b = PrimeFieldPoly::new(p, b_seed).unwrap();
            prop_assert_eq!(a.add(&b).unwrap().sub(&b).unwrap(), a);
        }
    }
}
