//! Exact local and star discrepancy.
//!
//! Boxes are anchored at the origin. The local discrepancy of a box is the
//! signed difference between how many points it holds and its fair share
//! N*Vol. The star discrepancy is the supremum of |local|/N over all anchored
//! boxes; for a finite point set that supremum is attained on the finite grid
//! of per-axis point coordinates (plus 1), evaluated in two ways per grid
//! corner: with the box ending exactly at the corner (strict count) and with
//! it closing on the corner from above (non-strict count, the one-sided
//! limit). Everything is a rational; nothing is sampled or rounded.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::badic::{DigitVector, Point};
use crate::error::{Error, Result};
use crate::generators::PointSet;

/// Refuse exact-supremum enumeration beyond this many cell-point comparisons.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1_000_000_000;

/// One side of an anchored box: either a digit fraction in [0, 1) or the
/// full interval (the value 1, which no digit vector can spell).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoxCoordinate {
    Fraction(DigitVector),
    Full,
}

impl BoxCoordinate {
    pub fn value(&self) -> BigRational {
        match self {
            BoxCoordinate::Fraction(g) => g.value(),
            BoxCoordinate::Full => BigRational::one(),
        }
    }
}

/// The box [0, g1) x ... x [0, gs). Coordinate lengths may differ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnchoredBox {
    base: u32,
    coords: Vec<BoxCoordinate>,
}

impl AnchoredBox {
    pub fn new(base: u32, coords: Vec<BoxCoordinate>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::EmptyPoint);
        }
        for c in &coords {
            if let BoxCoordinate::Fraction(g) = c {
                if g.base() != base {
                    return Err(Error::BaseMismatch(base, g.base()));
                }
            }
        }
        Ok(AnchoredBox { base, coords })
    }

    /// Builds a box whose sides are digit fractions.
    pub fn from_digit_vectors(coords: Vec<DigitVector>) -> Result<Self> {
        let base = coords.first().ok_or(Error::EmptyPoint)?.base();
        Self::new(base, coords.into_iter().map(BoxCoordinate::Fraction).collect())
    }

    /// Parses a comma-separated side list: each side is either canonical digit
    /// text (`2:0101`) or `1`/`full` for the full interval.
    pub fn parse(text: &str, base: u32) -> Result<Self> {
        let coords = text
            .split(',')
            .map(|token| {
                let token = token.trim();
                if token == "1" || token.eq_ignore_ascii_case("full") {
                    Ok(BoxCoordinate::Full)
                } else {
                    Ok(BoxCoordinate::Fraction(token.parse()?))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(base, coords)
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BoxCoordinate] {
        &self.coords
    }

    pub fn coord(&self, i: usize) -> &BoxCoordinate {
        &self.coords[i]
    }

    /// Exact volume: the product of the side values.
    pub fn volume(&self) -> BigRational {
        self.coords.iter().map(|c| c.value()).product()
    }

    /// Membership test: strictly below every side.
    pub fn indicator(&self, point: &Point) -> Result<bool> {
        if point.dim() != self.coords.len() {
            return Err(Error::DimensionMismatch(self.coords.len(), point.dim()));
        }
        if point.base() != self.base {
            return Err(Error::BaseMismatch(self.base, point.base()));
        }
        for (x, side) in point.coords().iter().zip(&self.coords) {
            if let BoxCoordinate::Fraction(g) = side {
                if x.cmp_value(g)? != std::cmp::Ordering::Less {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

impl std::fmt::Display for AnchoredBox {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| match c {
                BoxCoordinate::Fraction(g) => g.to_string(),
                BoxCoordinate::Full => "1".to_string(),
            })
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Number of points inside the box.
pub fn box_count(ps: &PointSet, b: &AnchoredBox) -> Result<u64> {
    let mut count = 0u64;
    for p in ps.iter() {
        if b.indicator(p)? {
            count += 1;
        }
    }
    Ok(count)
}

/// count(box) - N * Vol(box), exact.
pub fn local_discrepancy(ps: &PointSet, b: &AnchoredBox) -> Result<BigRational> {
    let count = box_count(ps, b)?;
    let n = BigRational::from_integer(BigInt::from(ps.len()));
    Ok(BigRational::from_integer(count.into()) - n * b.volume())
}

/// |local discrepancy| / N: a certified lower bound on the star discrepancy.
pub fn star_discrepancy_lower_witness(ps: &PointSet, b: &AnchoredBox) -> Result<BigRational> {
    let n = BigRational::from_integer(BigInt::from(ps.len()));
    Ok(local_discrepancy(ps, b)?.abs() / n)
}

/// Which one-sided evaluation realized the supremum at the witness corner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SupBranch {
    /// The box ends exactly at the corner; points on the corner are outside.
    Open,
    /// The box closes on the corner from above; points on the corner are
    /// inside while the volume stays that of the corner.
    ClosedLimit,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarDiscrepancy {
    /// The exact supremum sup |local| / N.
    pub value: BigRational,
    /// Grid corner where it is attained (lexicographically smallest).
    pub witness_corner: Vec<BigRational>,
    pub branch: SupBranch,
    /// Signed local discrepancy at the witness (count - N*vol for the branch).
    pub witness_delta: BigRational,
    pub corners_checked: u128,
}

/// Exact star discrepancy by enumeration of the critical grid.
///
/// Per axis the candidate values are the distinct point coordinates plus 1.
/// At each corner only the two pure branches need checking: closing any
/// subset of sides can only move the count between the all-strict and the
/// all-non-strict counts while the volume is pinned by the corner, so the
/// largest |count - N*vol| over mixed branches is reached at one of the two
/// extremes. Corners are visited in lexicographic order and a new maximum
/// must be strictly larger, which makes the reported witness canonical.
///
/// Refuses (with the exact numbers) when cells * N exceeds the budget.
pub fn star_discrepancy_exact(ps: &PointSet, budget: u64) -> Result<StarDiscrepancy> {
    let s = ps.dim();
    let n_points = ps.len();

    // per-axis sorted candidates, then each point's rank row (point-major)
    let mut axis_values: Vec<Vec<BigRational>> = Vec::with_capacity(s);
    for i in 0..s {
        let mut values: Vec<BigRational> = ps.iter().map(|p| p.coord(i).value()).collect();
        values.sort();
        values.dedup();
        values.push(BigRational::one());
        axis_values.push(values);
    }
    let ranks: Vec<Vec<usize>> = ps
        .iter()
        .map(|p| {
            (0..s)
                .map(|i| {
                    let v = p.coord(i).value();
                    axis_values[i].binary_search(&v).expect("coordinate value is a candidate")
                })
                .collect()
        })
        .collect();

    let cells: u128 = axis_values.iter().map(|v| v.len() as u128).product();
    if cells.saturating_mul(n_points as u128) > u128::from(budget) {
        return Err(Error::BudgetExceeded { cells, points: n_points, budget });
    }

    let n_rational = BigRational::from_integer(BigInt::from(n_points));
    let mut best: Option<StarDiscrepancy> = None;
    let mut corner = vec![0usize; s];
    loop {
        // counts for both branches in one pass over the points
        let mut open = 0u64;
        let mut closed = 0u64;
        for point_ranks in &ranks {
            let mut all_lt = true;
            let mut all_le = true;
            for (&r, &c) in point_ranks.iter().zip(&corner) {
                all_lt &= r < c;
                all_le &= r <= c;
                if !all_le {
                    break;
                }
            }
            open += u64::from(all_lt);
            closed += u64::from(all_le);
        }
        let vol: BigRational = corner
            .iter()
            .enumerate()
            .map(|(i, &r)| axis_values[i][r].clone())
            .product();
        let fair = &n_rational * &vol;
        for (branch, count) in [(SupBranch::Open, open), (SupBranch::ClosedLimit, closed)] {
            let delta = BigRational::from_integer(count.into()) - &fair;
            let score = delta.abs();
            if best.as_ref().is_none_or(|b| score > b.value) {
                best = Some(StarDiscrepancy {
                    value: score,
                    witness_corner: corner
                        .iter()
                        .enumerate()
                        .map(|(i, &r)| axis_values[i][r].clone())
                        .collect(),
                    branch,
                    witness_delta: delta,
                    corners_checked: 0,
                });
            }
        }
        // odometer, last axis fastest, so corners advance lexicographically
        let mut axis = s;
        loop {
            if axis == 0 {
                let mut out = best.expect("at least one corner");
                out.value /= &n_rational;
                out.corners_checked = cells;
                return Ok(out);
            }
            axis -= 1;
            corner[axis] += 1;
            if corner[axis] < axis_values[axis].len() {
                break;
            }
            corner[axis] = 0;
        }
    }
}

/// Reference star discrepancy: the same grid walked with per-corner rational
/// comparisons against every point, no rank tables. Slow on purpose; the test
/// suite checks [`star_discrepancy_exact`] against it for exact equality.
pub fn star_discrepancy_reference(ps: &PointSet) -> Result<BigRational> {
    let s = ps.dim();
    let values: Vec<Vec<BigRational>> = ps.values();
    let mut axis_values: Vec<Vec<BigRational>> = Vec::with_capacity(s);
    for i in 0..s {
        let mut v: Vec<BigRational> = values.iter().map(|row| row[i].clone()).collect();
        v.sort();
        v.dedup();
        v.push(BigRational::one());
        axis_values.push(v);
    }
    let n_rational = BigRational::from_integer(BigInt::from(ps.len()));
    let mut best = BigRational::zero();
    let mut corner = vec![0usize; s];
    'corners: loop {
        let gamma: Vec<&BigRational> =
            corner.iter().enumerate().map(|(i, &r)| &axis_values[i][r]).collect();
        let vol: BigRational = gamma.iter().copied().product();
        let mut open = 0u64;
        let mut closed = 0u64;
        for row in &values {
            if row.iter().zip(&gamma).all(|(x, g)| x < *g) {
                open += 1;
            }
            if row.iter().zip(&gamma).all(|(x, g)| x <= *g) {
                closed += 1;
            }
        }
        let fair = &n_rational * &vol;
        for count in [open, closed] {
            let score = (BigRational::from_integer(count.into()) - &fair).abs();
            if score > best {
                best = score;
            }
        }
        let mut axis = s;
        loop {
            if axis == 0 {
                break 'corners;
            }
            axis -= 1;
            corner[axis] += 1;
            if corner[axis] < axis_values[axis].len() {
                continue 'corners;
            }
            corner[axis] = 0;
        }
    }
    Ok(best / n_rational)
}
