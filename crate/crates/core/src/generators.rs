//! Digital point generation.
//!
//! A [`GeneratorSystem`] holds s matrices over Z_b; point n is obtained by
//! multiplying each matrix by the column of n's base-b digits (least
//! significant digit on top) and reading the result as the base-b digits of
//! coordinate i. The classical construction of [`build_niederreiter`] fills
//! the rows with Laurent coefficients of rational functions attached to a
//! list of monic irreducible generating polynomials; its structural claims
//! (net property, admissibility) are certified by the checks in
//! [`crate::verify`], which is why the builder records the declared quality
//! parameters rather than proving them.

use num::BigRational;

use crate::badic::{int_digital_sub, int_digits_lsb, int_width, DigitVector, Point};
use crate::error::{Error, Result};
use crate::gfpoly::{is_prime, laurent_coeffs, PrimeFieldPoly};

/// s generating matrices over Z_b plus the declared quality parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSystem {
    base: u32,
    precision: usize,
    /// One m x m matrix per coordinate, row major, entries in [0, base).
    matrices: Vec<Vec<Vec<u8>>>,
    /// Per-coordinate depth moduli e_i; elementary-interval checks only
    /// consult depths divisible by these.
    e: Vec<usize>,
    /// Declared quality offset for the e-restricted net property.
    u: usize,
    /// Declared classical quality parameter.
    t: usize,
    /// Generating polynomials when built from them, for provenance.
    polys: Option<Vec<PrimeFieldPoly>>,
}

impl GeneratorSystem {
    pub fn new(
        base: u32,
        matrices: Vec<Vec<Vec<u8>>>,
        e: Vec<usize>,
        u: usize,
        t: usize,
    ) -> Result<Self> {
        if !is_prime(base) {
            return Err(Error::BaseNotPrime(base));
        }
        if matrices.is_empty() {
            return Err(Error::EmptyPoint);
        }
        let m = matrices[0].len();
        for (index, matrix) in matrices.iter().enumerate() {
            if matrix.len() != m || matrix.iter().any(|row| row.len() != m) {
                return Err(Error::MatrixShape { index, m });
            }
            for row in matrix {
                for (position, &entry) in row.iter().enumerate() {
                    if u32::from(entry) >= base {
                        return Err(Error::DigitOutOfRange { digit: entry, position, base });
                    }
                }
            }
        }
        if e.len() != matrices.len() {
            return Err(Error::DimensionMismatch(matrices.len(), e.len()));
        }
        if let Some(i) = e.iter().position(|&ei| ei == 0) {
            return Err(Error::DepthModulusZero(i));
        }
        if u > m {
            return Err(Error::QualityTooLarge { u, m });
        }
        Ok(GeneratorSystem { base, precision: m, matrices, e, u, t, polys: None })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    /// Dimension s.
    pub fn dim(&self) -> usize {
        self.matrices.len()
    }

    /// Digit precision m (matrices are m x m).
    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn matrices(&self) -> &[Vec<Vec<u8>>] {
        &self.matrices
    }

    pub fn e(&self) -> &[usize] {
        &self.e
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn polys(&self) -> Option<&[PrimeFieldPoly]> {
        self.polys.as_deref()
    }

    /// Point n: coordinate i is matrix_i times the digit column of n.
    pub fn digital_point(&self, n: u64) -> Result<Point> {
        let m = self.precision;
        let digits = int_digits_lsb(n, self.base, m)
            .map_err(|_| Error::IndexTooLarge { n, base: self.base, m })?;
        let b = u32::from(self.base as u16);
        let coords = self
            .matrices
            .iter()
            .map(|matrix| {
                let out = matrix
                    .iter()
                    .map(|row| {
                        let mut acc = 0u32;
                        for (&entry, &digit) in row.iter().zip(&digits) {
                            acc += u32::from(entry) * u32::from(digit);
                        }
                        (acc % b) as u8
                    })
                    .collect();
                DigitVector::new(self.base, out)
            })
            .collect::<Result<_>>()?;
        Point::new(coords)
    }

    /// The first `count` points, index order. `count` may not exceed b^m.
    pub fn points(&self, count: u64) -> Result<PointSet> {
        let points = (0..count).map(|n| self.digital_point(n)).collect::<Result<_>>()?;
        PointSet::new(points, format!("{} first {} points", self.describe(), count))
    }

    /// Block k at depth m: the points with k*b^m <= n < (k+1)*b^m, truncated
    /// to m digits.
    pub fn block(&self, k: u64, m: usize) -> Result<PointSet> {
        if m > self.precision {
            return Err(Error::PrecisionTooLow { precision: self.precision, required: m });
        }
        let width = int_width(self.base, m)?;
        let start = k
            .checked_mul(width)
            .ok_or(Error::IndexTooLarge { n: u64::MAX, base: self.base, m: self.precision })?;
        let points = (start..start + width)
            .map(|n| self.digital_point(n)?.truncated(m))
            .collect::<Result<_>>()?;
        PointSet::new(points, format!("{} block k={} depth {}", self.describe(), k, m))
    }

    fn describe(&self) -> String {
        match &self.polys {
            Some(polys) => {
                let names: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
                format!("niederreiter base={} polys=[{}] m={}", self.base, names.join(", "), self.precision)
            }
            None => format!("matrices base={} s={} m={}", self.base, self.dim(), self.precision),
        }
    }
}

/// Classical construction: row j of matrix i (1-based, j-1 = Q*e_i + r with
/// 0 <= r < e_i) holds the Laurent coefficients of x^(e_i-1-r) / p_i^(Q+1).
/// Polynomials must be monic, non-constant, irreducible, pairwise distinct.
/// The declared parameters are e_i = deg p_i, u = 0, t = sum(e_i) - s.
pub fn build_niederreiter(
    base: u32,
    polys: &[PrimeFieldPoly],
    m: usize,
) -> Result<GeneratorSystem> {
    if !is_prime(base) {
        return Err(Error::BaseNotPrime(base));
    }
    if polys.is_empty() {
        return Err(Error::EmptyPoint);
    }
    for (i, poly) in polys.iter().enumerate() {
        if poly.modulus() != base {
            return Err(Error::ModulusMismatch(base, poly.modulus()));
        }
        match poly.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial(poly.to_string())),
            Some(_) => {}
        }
        if !poly.is_monic() {
            return Err(Error::NotMonic(poly.to_string()));
        }
        if !poly.is_irreducible()? {
            return Err(Error::NotIrreducible(poly.to_string()));
        }
        if polys[..i].contains(poly) {
            return Err(Error::DuplicatePolynomial(poly.to_string()));
        }
    }
    let mut matrices = Vec::with_capacity(polys.len());
    for poly in polys {
        let e = poly.degree().unwrap();
        let mut rows = Vec::with_capacity(m);
        for j in 0..m {
            let q = (j / e) as u32;
            let r = j % e;
            let num = PrimeFieldPoly::monomial(base, e - 1 - r)?;
            let den = poly.pow(q + 1)?;
            let coeffs = laurent_coeffs(&num, &den, m)?;
            rows.push(coeffs.into_iter().map(|c| c as u8).collect());
        }
        matrices.push(rows);
    }
    let e: Vec<usize> = polys.iter().map(|p| p.degree().unwrap()).collect();
    let e0: usize = e.iter().sum();
    let t = e0 - polys.len();
    let mut sys = GeneratorSystem::new(base, matrices, e, 0, t)?;
    sys.polys = Some(polys.to_vec());
    Ok(sys)
}

/// The fraction n/b^m as a digit vector: fraction digit j is base-b digit
/// m+1-j of n.
pub fn vdc_coordinate(n: u64, base: u32, m: usize) -> Result<DigitVector> {
    let mut digits = int_digits_lsb(n, base, m)
        .map_err(|_| Error::IndexTooLarge { n, base, m })?;
    digits.reverse();
    DigitVector::new(base, digits)
}

/// An ordered list of points with uniform base, precision, and dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    provenance: String,
}

impl PointSet {
    pub fn new(points: Vec<Point>, provenance: String) -> Result<Self> {
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        let (base, precision, dim) = (first.base(), first.precision(), first.dim());
        for p in &points {
            if p.base() != base {
                return Err(Error::BaseMismatch(base, p.base()));
            }
            if p.precision() != precision {
                return Err(Error::PrecisionMismatch(precision, p.precision()));
            }
            if p.dim() != dim {
                return Err(Error::DimensionMismatch(dim, p.dim()));
            }
        }
        Ok(PointSet { points, provenance })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn base(&self) -> u32 {
        self.points[0].base()
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn precision(&self) -> usize {
        self.points[0].precision()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn point(&self, n: usize) -> &Point {
        &self.points[n]
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn truncated(&self, m: usize) -> Result<Self> {
        let points = self.points.iter().map(|p| p.truncated(m)).collect::<Result<_>>()?;
        Ok(PointSet { points, provenance: format!("{} [truncated to {}]", self.provenance, m) })
    }

    /// Digitally shifts every point by w.
    pub fn shifted(&self, w: &Point) -> Result<Self> {
        let points = self.points.iter().map(|p| p.add(w)).collect::<Result<_>>()?;
        Ok(PointSet { points, provenance: format!("{} [shifted]", self.provenance) })
    }

    /// Exact coordinate values, for rendering.
    pub fn values(&self) -> Vec<Vec<BigRational>> {
        self.points
            .iter()
            .map(|p| p.coords().iter().map(|c| c.value()).collect())
            .collect()
    }
}

/// Appends an index coordinate: output point n is
/// (x_n + w^(1), ..., x_n + w^(s), vdc(n - Q) + w^(s+1)),
/// all sums digitwise. The input must hold exactly b^m points at precision m,
/// matching the shift's precision; Q < b^m.
///
/// Reindexing n to n+Q turns this ordering into
/// (x_(n+Q) + w', vdc(n) + w^(s+1)); both orderings carry the same multiset.
pub fn lift_with_index(ps: &PointSet, q: u64, shift: &Point) -> Result<PointSet> {
    let base = ps.base();
    let m = ps.precision();
    if shift.base() != base {
        return Err(Error::BaseMismatch(base, shift.base()));
    }
    if shift.precision() != m {
        return Err(Error::PrecisionMismatch(m, shift.precision()));
    }
    if shift.dim() != ps.dim() + 1 {
        return Err(Error::DimensionMismatch(ps.dim() + 1, shift.dim()));
    }
    let width = int_width(base, m)?;
    if ps.len() as u64 != width {
        return Err(Error::WrongPointCount { got: ps.len(), expected: width });
    }
    if q >= width {
        return Err(Error::IndexTooLarge { n: q, base, m });
    }
    let last_shift = shift.coord(ps.dim());
    let mut points = Vec::with_capacity(ps.len());
    for (n, p) in ps.iter().enumerate() {
        let mut coords = Vec::with_capacity(p.dim() + 1);
        for (i, c) in p.coords().iter().enumerate() {
            coords.push(c.add(shift.coord(i))?);
        }
        let index_coord = vdc_coordinate(int_digital_sub(n as u64, q, base, m)?, base, m)?;
        coords.push(index_coord.add(last_shift)?);
        points.push(Point::new(coords)?);
    }
    PointSet::new(points, format!("{} [lifted Q={}]", ps.provenance(), q))
}
