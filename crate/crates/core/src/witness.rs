//! Constructive star-discrepancy lower bounds.
//!
//! Both certificate modes work the same way: derive a digit schedule from
//! (d, t, dimension, precision), spell an anchored box gamma whose sides
//! repeat the cell 0...01 with cell width d0 = d+t, pick a digital shift w
//! that parks a known point exactly on the box corner prefix, and then
//! measure the local discrepancy of the shifted set against the box. The
//! measurement is exact; a certificate is the pair (w, gamma) together with
//! the measured delta and the closed-form bound it is asserted against.
//!
//! Mode `--theorem 1` applies this to an s-dimensional net directly
//! (anchor x_0). Mode `--theorem 2` lifts an s-dimensional sequence prefix by
//! an index coordinate n/b^m, anchors at n0 = Q (+) gamma_int, and shifts the
//! index coordinate by the digit negation of Q/b^m, producing one certificate
//! per offset Q. The asserted bounds assume the input is d-admissible at the
//! declared level; the admissibility checks in [`crate::verify`] establish
//! that separately (re-scanning all pairs here would dwarf the measurement).

use std::collections::BTreeSet;

use num::{BigInt, BigRational, One, Signed, Zero};
use rayon::prelude::*;

use crate::badic::{int_digital_add, int_width, power_rational, DigitVector, Point};
use crate::discrepancy::{box_count, AnchoredBox, BoxCoordinate};
use crate::error::{Error, Result};
use crate::generators::{lift_with_index, vdc_coordinate, PointSet};
use crate::gfpoly::PrimeFieldPoly;

/// Digit schedule shared by both certificate modes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessParams {
    /// Number of box coordinates.
    pub dims: usize,
    /// Admissibility margin of the target set.
    pub d: usize,
    /// Net quality offset.
    pub t: usize,
    /// Pin cell width d + t: each pinned cell is d0-1 zeros then a 1.
    pub d0: usize,
    /// Cells pinned per block index.
    pub e_hat: usize,
    /// Fraction of the precision spent on block indices.
    pub epsilon: BigRational,
    /// Digit precision of the point set.
    pub m: usize,
    /// Number of block indices: floor(m * epsilon).
    pub blocks: usize,
    /// Per-coordinate offset where the pinned digits start (only the last
    /// coordinate is offset).
    pub offsets: Vec<usize>,
    /// Digit length of each box side.
    pub side_lengths: Vec<usize>,
    /// Block indices left unpinned, per coordinate.
    pub excluded: Vec<BTreeSet<usize>>,
    /// Total number of exclusions across coordinates.
    pub excluded_count: usize,
}

/// Empty exclusion sets for `dims` coordinates (the default schedule).
pub fn no_exclusions(dims: usize) -> Vec<BTreeSet<usize>> {
    vec![BTreeSet::new(); dims]
}

/// Derives the digit schedule, rejecting any input that violates its
/// hypotheses instead of proceeding silently. Requirements, in check order:
/// dims >= 2, d >= 1, e_hat >= 1, one exclusion set per coordinate,
/// 0 < epsilon <= 1/(2*d0*e_hat*(dims-1)), exclusions within the block range,
/// at least one digit left for the last coordinate's own block, and
/// m >= 4/epsilon*(dims-1)*(1+dims*B) + 2t.
pub fn derive_params(
    dims: usize,
    d: usize,
    t: usize,
    m: usize,
    e_hat: usize,
    epsilon: BigRational,
    excluded: Vec<BTreeSet<usize>>,
) -> Result<WitnessParams> {
    if dims < 2 {
        return Err(Error::WitnessDimensionTooSmall(dims));
    }
    if d < 1 {
        return Err(Error::MarginTooSmall(d));
    }
    if e_hat < 1 {
        return Err(Error::PinStrideZero);
    }
    if excluded.len() != dims {
        return Err(Error::ExclusionCountMismatch { expected: dims, got: excluded.len() });
    }
    let d0 = d + t;
    let eps_max = BigRational::new(BigInt::one(), BigInt::from(2 * d0 * e_hat * (dims - 1)));
    if epsilon <= BigRational::zero() || epsilon > eps_max {
        return Err(Error::EpsilonOutOfRange {
            max: eps_max.to_string(),
            got: epsilon.to_string(),
        });
    }
    let blocks = (BigRational::from_integer(BigInt::from(m)) * &epsilon)
        .floor()
        .to_integer()
        .try_into()
        .expect("m*epsilon is small and non-negative");
    for (coordinate, set) in excluded.iter().enumerate() {
        if set.iter().any(|&j| j >= blocks) {
            return Err(Error::ExclusionOutOfRange { coordinate, m_dot: blocks });
        }
    }
    let side = d0 * e_hat * blocks;
    let last_offset = m as i64 - ((dims - 1) * side) as i64 - t as i64;
    if last_offset < 1 {
        return Err(Error::FinalBlockEmpty { m, got: last_offset });
    }
    let last_offset = last_offset as usize;
    let excluded_count: usize = excluded.iter().map(|s| s.len()).sum();
    let hypothesis = BigRational::from_integer(BigInt::from(4))
        / &epsilon
        * BigRational::from_integer(BigInt::from((dims - 1) * (1 + dims * excluded_count)))
        + BigRational::from_integer(BigInt::from(2 * t));
    if BigRational::from_integer(BigInt::from(m)) < hypothesis {
        return Err(Error::HypothesisNotMet { m, threshold: hypothesis.to_string() });
    }
    let mut offsets = vec![0usize; dims];
    offsets[dims - 1] = last_offset;
    let mut side_lengths = vec![side; dims];
    side_lengths[dims - 1] = last_offset + side;
    Ok(WitnessParams {
        dims,
        d,
        t,
        d0,
        e_hat,
        epsilon,
        m,
        blocks,
        offsets,
        side_lengths,
        excluded,
        excluded_count,
    })
}

/// Canonical epsilon for the net-mode certificate: 1/(2*(s-1)*d0).
pub fn theorem1_epsilon(s: usize, d0: usize) -> Result<BigRational> {
    if s < 2 {
        return Err(Error::WitnessDimensionTooSmall(s));
    }
    if d0 < 1 {
        return Err(Error::MarginTooSmall(d0));
    }
    Ok(BigRational::new(BigInt::one(), BigInt::from(2 * (s - 1) * d0)))
}

/// Canonical epsilon for the sequence-mode certificate: 1/(2*s*d0). The box
/// lives in s+1 dimensions there, so this is the net-mode epsilon at s+1.
pub fn theorem2_epsilon(s: usize, d0: usize) -> Result<BigRational> {
    if s < 1 {
        return Err(Error::WitnessDimensionTooSmall(s));
    }
    if d0 < 1 {
        return Err(Error::MarginTooSmall(d0));
    }
    Ok(BigRational::new(BigInt::one(), BigInt::from(2 * s * d0)))
}

/// Spells the box sides from the schedule. Side i has length
/// side_lengths[i]; within it, for every non-excluded block index j and every
/// cell index 0 <= c < e_hat, the digits at offsets[i] + d0*(j*e_hat+c) + 1
/// ... + d0 form the cell 0...01. Every unpinned digit (excluded blocks, the
/// leading offset) is 0.
pub fn gamma_digits(params: &WitnessParams, base: u32) -> Result<AnchoredBox> {
    let mut sides = Vec::with_capacity(params.dims);
    for i in 0..params.dims {
        let mut digits = vec![0u8; params.side_lengths[i]];
        for j in 0..params.blocks {
            if params.excluded[i].contains(&j) {
                continue;
            }
            for c in 0..params.e_hat {
                // 1-based digit position of the cell's single 1
                let position = params.offsets[i] + params.d0 * (j * params.e_hat + c) + params.d0;
                digits[position - 1] = 1;
            }
        }
        sides.push(DigitVector::new(base, digits)?);
    }
    AnchoredBox::from_digit_vectors(sides)
}

/// The shift that parks `anchor` on the box corner: w = [gamma - anchor]_m
/// digitwise, per coordinate, with gamma zero-extended to m digits. After
/// shifting, the anchor's first side_lengths[i] digits spell gamma exactly.
pub fn theorem1_shift(anchor: &Point, gamma: &AnchoredBox, m: usize) -> Result<Point> {
    let sides = box_sides(gamma)?;
    shift_to_match(anchor, &sides, m)
}

fn box_sides(gamma: &AnchoredBox) -> Result<Vec<&DigitVector>> {
    gamma
        .coords()
        .iter()
        .enumerate()
        .map(|(i, c)| match c {
            BoxCoordinate::Fraction(g) => Ok(g),
            BoxCoordinate::Full => Err(Error::FullCoordinate(i)),
        })
        .collect()
}

fn shift_to_match(anchor: &Point, sides: &[&DigitVector], m: usize) -> Result<Point> {
    if anchor.dim() != sides.len() {
        return Err(Error::DimensionMismatch(sides.len(), anchor.dim()));
    }
    let coords = sides
        .iter()
        .zip(anchor.coords())
        .map(|(g, x)| g.padded(m)?.sub(&x.truncated(m)?))
        .collect::<Result<_>>()?;
    Point::new(coords)
}

/// K = 4*(d+t)*(s-1)^2, the constant in the closed-form m^(s-1) bound.
pub fn k_constant(d: usize, t: usize, s: usize) -> u64 {
    4 * (d + t) as u64 * ((s - 1) as u64).pow(2)
}

/// The certified growth bound for the net-mode certificate:
/// (K, b^-d * (m/K)^(s-1)). Requires s >= 2, d >= 1, and
/// m >= 9*(d+t)*(s-1)^2.
pub fn theorem1_bound(
    d: usize,
    t: usize,
    s: usize,
    m: usize,
    base: u32,
) -> Result<(u64, BigRational)> {
    if s < 2 {
        return Err(Error::WitnessDimensionTooSmall(s));
    }
    if d < 1 {
        return Err(Error::MarginTooSmall(d));
    }
    let threshold = 9 * (d + t) as u64 * ((s - 1) as u64).pow(2);
    if (m as u64) < threshold {
        return Err(Error::ThresholdNotMet { m, threshold });
    }
    let k = k_constant(d, t, s);
    let exp = (s - 1) as u32;
    let bound = power_rational(base, -(d as i64))
        * BigRational::new(BigInt::from(m).pow(exp), BigInt::from(k).pow(exp));
    Ok((k, bound))
}

/// The schedule's guaranteed local-discrepancy bound (negative when the
/// schedule is useful):
/// -b^-d * (e_hat*eps/(2*(dims-1)))^(dims-1) * m^(dims-1)
///   + b^(t+dims) * d0 * e_hat * B * m^(dims-2).
///
/// With no exclusions (B = 0) the second term vanishes.
pub fn delta_bound(params: &WitnessParams, base: u32) -> BigRational {
    let s1 = params.dims - 1;
    let ratio = BigRational::from_integer(BigInt::from(params.e_hat)) * &params.epsilon
        / BigRational::from_integer(BigInt::from(2 * s1));
    let mut main = power_rational(base, -(params.d as i64))
        * BigRational::from_integer(BigInt::from(params.m).pow(s1 as u32));
    for _ in 0..s1 {
        main *= &ratio;
    }
    let correction = power_rational(base, (params.t + params.dims) as i64)
        * BigRational::from_integer(BigInt::from(
            params.d0 * params.e_hat * params.excluded_count,
        ))
        * BigRational::from_integer(BigInt::from(params.m).pow((params.dims - 2) as u32));
    -main + correction
}

/// The (d, t) pair certified by a classical generating-polynomial system:
/// d = sum of the degrees, t = that sum minus the dimension.
pub fn certificate_params(polys: &[PrimeFieldPoly]) -> Result<(usize, usize)> {
    if polys.is_empty() {
        return Err(Error::EmptyPoint);
    }
    let mut total = 0usize;
    for poly in polys {
        match poly.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial(poly.to_string())),
            Some(deg) => total += deg,
        }
    }
    Ok((total, total - polys.len()))
}

/// Which certificate produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateMode {
    /// Direct net mode: shift the given net, measure one box.
    Theorem1,
    /// Lifted sequence mode at the given index offset Q.
    Theorem2 { q: u64 },
}

/// Everything needed to replay one certificate run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub mode: CertificateMode,
    pub params: WitnessParams,
    pub gamma: AnchoredBox,
    /// The digital shift applied to the (lifted) set.
    pub shift: Point,
    /// Index of the point parked on the box corner.
    pub anchor_index: u64,
    /// Points of the shifted set inside the box.
    pub count: u64,
    /// Exact measured local discrepancy.
    pub delta: BigRational,
    /// The schedule's guaranteed bound; the run passes iff delta <= this.
    pub schedule_bound: BigRational,
    pub k_constant: u64,
    /// The closed-form growth bound b^-d * (m/K)^(dims-1) the schedule bound
    /// dominates; |delta| >= this whenever the run passes.
    pub claimed_lower_bound: BigRational,
    pub passes: bool,
}

impl WitnessReport {
    /// |delta| / N: what the run certifies about the star discrepancy of the
    /// shifted set (D* of the best shift is at least this).
    pub fn certified_star_lower_bound(&self, n_points: usize) -> BigRational {
        self.delta.abs() / BigRational::from_integer(BigInt::from(n_points))
    }
}

/// Net-mode certificate: derives the canonical schedule for the net's
/// dimension, spells gamma, shifts the whole net so x_0 sits on the corner,
/// and measures. The net must hold exactly b^m points at precision m and be
/// d-admissible for the bound to be guaranteed; admissibility is the
/// caller's (checked) precondition, not re-scanned here.
pub fn verify_theorem1(net: &PointSet, d: usize, t: usize) -> Result<WitnessReport> {
    let base = net.base();
    let m = net.precision();
    let s = net.dim();
    let expected = int_width(base, m)?;
    if net.len() as u64 != expected {
        return Err(Error::WrongPointCount { got: net.len(), expected });
    }
    let (k, claimed) = theorem1_bound(d, t, s, m, base)?;
    let epsilon = theorem1_epsilon(s, d + t)?;
    let params = derive_params(s, d, t, m, 1, epsilon, no_exclusions(s))?;
    let gamma = gamma_digits(&params, base)?;
    let shift = theorem1_shift(net.point(0), &gamma, m)?;
    let shifted = net.shifted(&shift)?;
    check_anchor(&shifted, 0, &gamma, &params)?;
    finish_report(CertificateMode::Theorem1, &shifted, 0, params, gamma, shift, k, claimed, base)
}

/// Sequence-mode certificate at one index offset Q. The input is the first
/// b^m points of a d-admissible sequence at precision m; the box gains an
/// index coordinate, the anchor is n0 = Q (+) gamma_int where gamma_int holds
/// the last side's digits as an integer, and the recorded shift's last
/// component is the digit negation of Q/b^m. The lifted, shifted set is
/// measured against the box exactly as in net mode.
pub fn verify_theorem2_for_q(seq: &PointSet, q: u64, d: usize, t: usize) -> Result<WitnessReport> {
    let base = seq.base();
    let m = seq.precision();
    let s = seq.dim();
    let width = int_width(base, m)?;
    if seq.len() as u64 != width {
        return Err(Error::WrongPointCount { got: seq.len(), expected: width });
    }
    if q >= width {
        return Err(Error::IndexTooLarge { n: q, base, m });
    }
    let (k, claimed) = theorem1_bound(d, t, s + 1, m, base)?;
    let epsilon = theorem2_epsilon(s, d + t)?;
    let params = derive_params(s + 1, d, t, m, 1, epsilon, no_exclusions(s + 1))?;
    let gamma = gamma_digits(&params, base)?;
    let sides = box_sides(&gamma)?;

    // the last side read as an integer: digit j carries weight b^(m-j)
    let mut gamma_int = 0u64;
    let last = sides[s].padded(m)?;
    for &digit in last.digits() {
        gamma_int = gamma_int * u64::from(base) + u64::from(digit);
    }
    let n0 = int_digital_add(q, gamma_int, base, m)?;

    let prefix_shift = shift_to_match(seq.point(n0 as usize), &sides[..s], m)?;
    // lifting with offset q gives point n the index coordinate vdc(n-q),
    // which equals vdc(n) shifted by the negation of vdc(q)
    let mut lift_shift_coords = prefix_shift.coords().to_vec();
    lift_shift_coords.push(DigitVector::zeros(base, m));
    let lifted = lift_with_index(seq, q, &Point::new(lift_shift_coords)?)?;
    check_anchor(&lifted, n0, &gamma, &params)?;

    let mut shift_coords = prefix_shift.coords().to_vec();
    shift_coords.push(vdc_coordinate(q, base, m)?.negated());
    let shift = Point::new(shift_coords)?;
    finish_report(CertificateMode::Theorem2 { q }, &lifted, n0, params, gamma, shift, k, claimed, base)
}

/// Runs [`verify_theorem2_for_q`] for every Q in [0, b^m), in parallel,
/// reports in Q order.
pub fn verify_theorem2_scan(seq: &PointSet, d: usize, t: usize) -> Result<Vec<WitnessReport>> {
    let width = int_width(seq.base(), seq.precision())?;
    (0..width)
        .into_par_iter()
        .map(|q| verify_theorem2_for_q(seq, q, d, t))
        .collect()
}

/// The shifted anchor must spell gamma in its leading digits; anything else
/// is an implementation bug, not a data condition.
fn check_anchor(
    shifted: &PointSet,
    anchor_index: u64,
    gamma: &AnchoredBox,
    params: &WitnessParams,
) -> Result<()> {
    let anchor = shifted.point(anchor_index as usize);
    let sides = box_sides(gamma)?;
    for (i, &side) in sides.iter().enumerate() {
        if &anchor.coord(i).truncated(params.side_lengths[i])? != side {
            return Err(Error::AnchorMismatch { coordinate: i });
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn finish_report(
    mode: CertificateMode,
    measured: &PointSet,
    anchor_index: u64,
    params: WitnessParams,
    gamma: AnchoredBox,
    shift: Point,
    k: u64,
    claimed: BigRational,
    base: u32,
) -> Result<WitnessReport> {
    let count = box_count(measured, &gamma)?;
    let n = BigRational::from_integer(BigInt::from(measured.len()));
    let delta = BigRational::from_integer(count.into()) - n * gamma.volume();
    let schedule_bound = delta_bound(&params, base);
    let passes = delta <= schedule_bound;
    Ok(WitnessReport {
        mode,
        params,
        gamma,
        shift,
        anchor_index,
        count,
        delta,
        schedule_bound,
        k_constant: k,
        claimed_lower_bound: claimed,
        passes,
    })
}
