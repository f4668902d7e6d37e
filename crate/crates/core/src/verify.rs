//! Structural checks for digital point sets.
//!
//! Everything here is exhaustive and exact: the net checker enumerates every
//! admissible elementary-interval shape, the admissibility checkers scan every
//! point pair, and each failure is reported with the first violating interval
//! or the minimizing pair so a caller can reproduce it. These checks certify
//! the builders; they never sample.

use num::{BigRational, Zero};
use rayon::prelude::*;

use crate::badic::{int_valuation_exponent, int_width, power_rational, Point};
use crate::error::{Error, Result};
use crate::generators::PointSet;

/// A b-adic box: coordinate i spans [a_i / b^(d_i), (a_i+1) / b^(d_i)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryInterval {
    base: u32,
    depths: Vec<usize>,
    positions: Vec<u64>,
}

impl ElementaryInterval {
    pub fn new(base: u32, depths: Vec<usize>, positions: Vec<u64>) -> Result<Self> {
        if depths.len() != positions.len() {
            return Err(Error::DimensionMismatch(depths.len(), positions.len()));
        }
        for (&d, &a) in depths.iter().zip(&positions) {
            let width = int_width(base, d)?;
            if a >= width {
                return Err(Error::IndexTooLarge { n: a, base, m: d });
            }
        }
        Ok(ElementaryInterval { base, depths, positions })
    }

    pub fn depths(&self) -> &[usize] {
        &self.depths
    }

    pub fn positions(&self) -> &[u64] {
        &self.positions
    }

    /// b^(-sum of depths), exact.
    pub fn volume(&self) -> BigRational {
        let total: usize = self.depths.iter().sum();
        power_rational(self.base, -(total as i64))
    }

    /// True iff the first d_i digits of coordinate i spell a_i, for every i.
    pub fn contains(&self, point: &Point) -> Result<bool> {
        if point.dim() != self.depths.len() {
            return Err(Error::DimensionMismatch(self.depths.len(), point.dim()));
        }
        for (i, (&d, &a)) in self.depths.iter().zip(&self.positions).enumerate() {
            if point.coord(i).precision() < d {
                return Err(Error::PrecisionTooLow {
                    precision: point.coord(i).precision(),
                    required: d,
                });
            }
            let mut prefix = 0u64;
            for &digit in &point.coord(i).digits()[..d] {
                prefix = prefix * u64::from(self.base) + u64::from(digit);
            }
            if prefix != a {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl std::fmt::Display for ElementaryInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .depths
            .iter()
            .zip(&self.positions)
            .map(|(&d, &a)| format!("[{}/{}^{}, {}/{}^{})", a, self.base, d, a + 1, self.base, d))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// The first interval whose point count misses its fair share.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetCounterexample {
    pub interval: ElementaryInterval,
    pub count: u64,
    pub expected: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetCheckOutcome {
    pub holds: bool,
    pub counterexample: Option<NetCounterexample>,
    pub intervals_checked: u64,
}

/// Checks the restricted net property at depth m: every elementary interval
/// whose per-coordinate depths d_i are multiples of e_i and satisfy
/// sum(d_i) <= m - u must contain exactly b^(m - sum(d_i)) of the b^m points
/// (after truncation to m digits). Interval shapes are enumerated in
/// lexicographic depth order, cells in position order, so the reported
/// counterexample is canonical.
pub fn is_net(ps: &PointSet, u: usize, e: &[usize], m: usize) -> Result<NetCheckOutcome> {
    let base = ps.base();
    let s = ps.dim();
    if e.len() != s {
        return Err(Error::DimensionMismatch(s, e.len()));
    }
    if let Some(i) = e.iter().position(|&ei| ei == 0) {
        return Err(Error::DepthModulusZero(i));
    }
    if u > m {
        return Err(Error::QualityTooLarge { u, m });
    }
    if ps.precision() < m {
        return Err(Error::PrecisionTooLow { precision: ps.precision(), required: m });
    }
    let expected_points = int_width(base, m)?;
    if ps.len() as u64 != expected_points {
        return Err(Error::WrongPointCount { got: ps.len(), expected: expected_points });
    }

    let mut intervals_checked = 0u64;
    for depths in depth_vectors(e, m - u) {
        let total: usize = depths.iter().sum();
        let cells = int_width(base, total)? as usize;
        let expected = int_width(base, m - total)?;
        let mut counts = vec![0u64; cells];
        for point in ps.iter() {
            let mut id = 0u64;
            for (i, &d) in depths.iter().enumerate() {
                let digits = &point.coord(i).digits()[..d];
                let mut v = 0u64;
                for &digit in digits {
                    v = v * u64::from(base) + u64::from(digit);
                }
                id = id * int_width(base, d)? + v;
            }
            counts[id as usize] += 1;
        }
        intervals_checked += cells as u64;
        if let Some(bad) = counts.iter().position(|&c| c != expected) {
            let positions = decompose_cell(bad as u64, base, &depths);
            let interval = ElementaryInterval::new(base, depths, positions)?;
            let count = counts[bad];
            return Ok(NetCheckOutcome {
                holds: false,
                counterexample: Some(NetCounterexample { interval, count, expected }),
                intervals_checked,
            });
        }
    }
    Ok(NetCheckOutcome { holds: true, counterexample: None, intervals_checked })
}

/// All depth vectors with e_i | d_i and sum <= budget, lexicographic.
fn depth_vectors(e: &[usize], budget: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = vec![0usize; e.len()];
    fill_depths(e, budget, 0, &mut current, &mut out);
    out
}

fn fill_depths(
    e: &[usize],
    budget: usize,
    i: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if i == e.len() {
        out.push(current.clone());
        return;
    }
    let mut d = 0usize;
    while d <= budget {
        current[i] = d;
        fill_depths(e, budget - d, i + 1, current, out);
        d += e[i];
    }
    current[i] = 0;
}

fn decompose_cell(mut id: u64, base: u32, depths: &[usize]) -> Vec<u64> {
    let mut positions = vec![0u64; depths.len()];
    for (i, &d) in depths.iter().enumerate().rev() {
        let width = u64::from(base).pow(d as u32);
        positions[i] = id % width;
        id /= width;
    }
    positions
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceFailure {
    pub m: usize,
    pub k: u64,
    pub counterexample: NetCounterexample,
}

/// Outcome of the windowed sequence-block check. The property itself
/// quantifies over all depths and block indices; this verifies the finite
/// window m in (u, m_max], k in [0, k_max] and reports how far it looked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceCheckOutcome {
    pub holds: bool,
    pub verified_m_max: usize,
    pub verified_k_max: u64,
    pub failure: Option<SequenceFailure>,
}

/// Checks that every depth-m block of the sequence prefix is a net: for each
/// m in (u, m_max] and k in [0, k_max], the points k*b^m..(k+1)*b^m truncated
/// to m digits must pass [`is_net`]. The input must hold at least
/// (k_max+1)*b^(m_max) points at precision >= m_max.
pub fn is_sequence_prefix(
    ps: &PointSet,
    u: usize,
    e: &[usize],
    m_max: usize,
    k_max: u64,
) -> Result<SequenceCheckOutcome> {
    let base = ps.base();
    if ps.precision() < m_max {
        return Err(Error::PrecisionTooLow { precision: ps.precision(), required: m_max });
    }
    let required = (k_max + 1)
        .checked_mul(int_width(base, m_max)?)
        .ok_or(Error::WidthOverflow { base, m: m_max })?;
    if (ps.len() as u64) < required {
        return Err(Error::NotEnoughPoints { got: ps.len(), required });
    }
    for m in (u + 1)..=m_max {
        let width = int_width(base, m)? as usize;
        for k in 0..=k_max {
            let start = k as usize * width;
            let block = PointSet::new(
                ps.points()[start..start + width].to_vec(),
                format!("{} block k={} depth {}", ps.provenance(), k, m),
            )?
            .truncated(m)?;
            let outcome = is_net(&block, u, e, m)?;
            if !outcome.holds {
                return Ok(SequenceCheckOutcome {
                    holds: false,
                    verified_m_max: m_max,
                    verified_k_max: k_max,
                    failure: Some(SequenceFailure {
                        m,
                        k,
                        counterexample: outcome.counterexample.unwrap(),
                    }),
                });
            }
        }
    }
    Ok(SequenceCheckOutcome {
        holds: true,
        verified_m_max: m_max,
        verified_k_max: k_max,
        failure: None,
    })
}

/// The smallest pairwise product found by an admissibility scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairMinimum {
    /// Fewer than two points: nothing to compare.
    NoPairs,
    /// Some pair agrees on a full coordinate, so its product is exactly 0.
    Zero { argmin: (usize, usize) },
    /// The minimal product is base^exponent.
    Exponent { exponent: i64, argmin: (usize, usize) },
}

impl PairMinimum {
    pub fn value(&self, base: u32) -> Option<BigRational> {
        match self {
            PairMinimum::NoPairs => None,
            PairMinimum::Zero { .. } => Some(BigRational::zero()),
            PairMinimum::Exponent { exponent, .. } => Some(power_rational(base, *exponent)),
        }
    }

    pub fn argmin(&self) -> Option<(usize, usize)> {
        match self {
            PairMinimum::NoPairs => None,
            PairMinimum::Zero { argmin } | PairMinimum::Exponent { argmin, .. } => Some(*argmin),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityOutcome {
    pub holds: bool,
    /// Minimal tested product over all pairs (n, k) with k < n.
    pub minimum: PairMinimum,
    /// The bound the minimum was compared against.
    pub threshold: BigRational,
    /// True when the comparison requires strictly-greater (the net form);
    /// false when greater-or-equal suffices (the sequence form).
    pub strict: bool,
}

/// Digit rows flattened for the pair scans: coordinate i of point n lives at
/// data[(n*s + i)*m .. (n*s + i + 1)*m].
struct FlatPoints {
    s: usize,
    m: usize,
    data: Vec<u8>,
}

impl FlatPoints {
    fn build(ps: &PointSet, m: usize) -> Self {
        let s = ps.dim();
        let mut data = Vec::with_capacity(ps.len() * s * m);
        for p in ps.iter() {
            for c in p.coords() {
                data.extend_from_slice(&c.digits()[..m]);
            }
        }
        FlatPoints { s, m, data }
    }

    /// Exponent of prod_i ||x_n^(i) - x_k^(i)||, or None when some coordinate
    /// pair agrees on all m digits. Digits differ exactly where the digitwise
    /// difference is nonzero, so no subtraction is needed.
    fn pair_exponent(&self, n: usize, k: usize) -> Option<i64> {
        let (s, m) = (self.s, self.m);
        let a = &self.data[n * s * m..(n + 1) * s * m];
        let b = &self.data[k * s * m..(k + 1) * s * m];
        let mut total = 0i64;
        for i in 0..s {
            let ai = &a[i * m..(i + 1) * m];
            let bi = &b[i * m..(i + 1) * m];
            let j = ai.iter().zip(bi).position(|(x, y)| x != y)?;
            total += -(j as i64) - 1;
        }
        Some(total)
    }
}

/// Candidate ordering for the deterministic minimum: a zero product sorts
/// below every exponent; ties pick the lexicographically smallest (n, k).
fn better(a: &PairMinimum, b: &PairMinimum) -> bool {
    use PairMinimum::*;
    match (a, b) {
        (_, NoPairs) => true,
        (NoPairs, _) => false,
        (Zero { argmin: x }, Zero { argmin: y }) => x < y,
        (Zero { .. }, Exponent { .. }) => true,
        (Exponent { .. }, Zero { .. }) => false,
        (Exponent { exponent: e1, argmin: x }, Exponent { exponent: e2, argmin: y }) => {
            (e1, x) < (e2, y)
        }
    }
}

fn min_candidate(a: PairMinimum, b: PairMinimum) -> PairMinimum {
    if better(&a, &b) {
        a
    } else {
        b
    }
}

/// Net-form admissibility at depth m: the minimum over point pairs of
/// prod_i ||x_n^(i) - x_k^(i)|| (differences digitwise) must STRICTLY exceed
/// b^-(m+d). Points are truncated to m digits first; a shared coordinate
/// value makes the product 0 and fails every d.
pub fn is_admissible_net(ps: &PointSet, d: usize, m: usize) -> Result<AdmissibilityOutcome> {
    let base = ps.base();
    if ps.precision() < m {
        return Err(Error::PrecisionTooLow { precision: ps.precision(), required: m });
    }
    let expected = int_width(base, m)?;
    if ps.len() as u64 != expected {
        return Err(Error::WrongPointCount { got: ps.len(), expected });
    }
    let minimum = scan_pairs(ps, m, ps.len(), false);
    let threshold = power_rational(base, -((m + d) as i64));
    let holds = match &minimum {
        PairMinimum::NoPairs => true,
        PairMinimum::Zero { .. } => false,
        PairMinimum::Exponent { exponent, .. } => *exponent > -((m + d) as i64),
    };
    Ok(AdmissibilityOutcome { holds, minimum, threshold, strict: true })
}

/// Sequence-form admissibility over the first n_points points: for all pairs
/// k < n the weighted product ||n - k|| * prod_i ||x_n^(i) - x_k^(i)|| must be
/// AT LEAST b^-d (non-strict, unlike the net form). The index difference is
/// digitwise and its valuation is the largest power of b not exceeding it;
/// coordinates are compared at full stored precision.
pub fn is_admissible_sequence_prefix(
    ps: &PointSet,
    d: usize,
    n_points: usize,
) -> Result<AdmissibilityOutcome> {
    let base = ps.base();
    if ps.len() < n_points {
        return Err(Error::NotEnoughPoints { got: ps.len(), required: n_points as u64 });
    }
    let minimum = scan_pairs(ps, ps.precision(), n_points, true);
    let threshold = power_rational(base, -(d as i64));
    let holds = match &minimum {
        PairMinimum::NoPairs => true,
        PairMinimum::Zero { .. } => false,
        PairMinimum::Exponent { exponent, .. } => *exponent >= -(d as i64),
    };
    Ok(AdmissibilityOutcome { holds, minimum, threshold, strict: false })
}

/// Pair scan shared by both admissibility forms. When `weight_by_index` is
/// set the exponent of ||n - k|| is added (the digitwise difference of equal
/// integers is 0 only for n = k, which the k < n loop excludes). Parallel
/// over n; the reduction order cannot change the result because the candidate
/// order is total.
fn scan_pairs(ps: &PointSet, m: usize, n_points: usize, weight_by_index: bool) -> PairMinimum {
    let flat = FlatPoints::build(ps, m);
    let base = ps.base();
    (1..n_points)
        .into_par_iter()
        .map(|n| {
            let mut best = PairMinimum::NoPairs;
            for k in 0..n {
                let candidate = match flat.pair_exponent(n, k) {
                    None => PairMinimum::Zero { argmin: (n, k) },
                    Some(mut exponent) => {
                        if weight_by_index {
                            // digitwise difference of n and k: its top nonzero
                            // digit sits exactly at the highest differing digit
                            let diff = highest_differing_digit(n as u64, k as u64, base);
                            exponent += diff as i64;
                        }
                        PairMinimum::Exponent { exponent, argmin: (n, k) }
                    }
                };
                best = min_candidate(best, candidate);
            }
            best
        })
        .reduce(|| PairMinimum::NoPairs, min_candidate)
}

/// Index of the most significant base-b digit where n and k differ; this is
/// the valuation exponent of the digitwise difference. Requires n != k.
fn highest_differing_digit(n: u64, k: u64, base: u32) -> u32 {
    debug_assert_ne!(n, k);
    if base == 2 {
        return 63 - (n ^ k).leading_zeros();
    }
    let b = u64::from(base);
    let (mut n, mut k) = (n, k);
    let mut position = 0u32;
    let mut highest = 0u32;
    while n > 0 || k > 0 {
        if n % b != k % b {
            highest = position;
        }
        n /= b;
        k /= b;
        position += 1;
    }
    highest
}

/// Admissibility level attained by a digitally-built (0, e, s)-sequence: the
/// sum of the per-coordinate depth moduli. Used to pick d when checking a
/// freshly built system.
pub fn sequence_admissibility_level(e: &[usize]) -> usize {
    e.iter().sum()
}

/// Integer valuation exponent helper re-exported for report rendering.
pub fn index_valuation_exponent(n: u64, base: u32) -> Option<u32> {
    int_valuation_exponent(n, base)
}
