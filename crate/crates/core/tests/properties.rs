//! Cross-module invariants that tie the digit arithmetic, the generators,
//! the verification scans, and the certificate machinery together.

use num::{BigInt, BigRational, Signed};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use lowdisc::badic::{DigitVector, Point};
use lowdisc::discrepancy::{local_discrepancy, AnchoredBox};
use lowdisc::generators::{build_niederreiter, PointSet};
use lowdisc::gfpoly::monic_polys_of_degree;
use lowdisc::verify::{is_admissible_net, is_admissible_sequence_prefix, is_sequence_prefix};
use lowdisc::witness::{
    certificate_params, derive_params, gamma_digits, no_exclusions, theorem1_shift,
};
use lowdisc::PrimeFieldPoly;

fn random_point_set(rng: &mut StdRng, base: u32, dim: usize, m: usize, n: usize) -> PointSet {
    let points = (0..n)
        .map(|_| {
            let coords = (0..dim)
                .map(|_| {
                    let digits = (0..m).map(|_| rng.random_range(0..base) as u8).collect();
                    DigitVector::new(base, digits).unwrap()
                })
                .collect();
            Point::new(coords).unwrap()
        })
        .collect();
    PointSet::new(points, "random".into()).unwrap()
}

fn random_point(rng: &mut StdRng, base: u32, dim: usize, m: usize) -> Point {
    let coords = (0..dim)
        .map(|_| {
            let digits = (0..m).map(|_| rng.random_range(0..base) as u8).collect();
            DigitVector::new(base, digits).unwrap()
        })
        .collect();
    Point::new(coords).unwrap()
}

/// Pair differences cancel a common digital shift, so shifting a whole set
/// never changes the admissibility scan's minimum. This is what lets the
/// certificate shift a set without damaging the property its bound rests on.
#[test]
fn admissibility_minimum_is_shift_invariant() {
    let mut rng = StdRng::seed_from_u64(41);
    for _ in 0..30 {
        let base = [2u32, 3][rng.random_range(0..2)];
        let dim = rng.random_range(1..=3);
        // net form wants exactly base^m points
        let m = if base == 2 { rng.random_range(2..=5) } else { rng.random_range(2..=3) };
        let n = u64::from(base).pow(m as u32) as usize;
        let ps = random_point_set(&mut rng, base, dim, m, n);
        let w = random_point(&mut rng, base, dim, m);
        let shifted = ps.shifted(&w).unwrap();
        for d in 1..=2usize {
            let plain = is_admissible_net(&ps, d, m).unwrap();
            let moved = is_admissible_net(&shifted, d, m).unwrap();
            assert_eq!(plain.minimum, moved.minimum);
            assert_eq!(plain.holds, moved.holds);
            // the sequence form weighs pairs by index distance, which a
            // pointwise shift does not touch either
            let plain = is_admissible_sequence_prefix(&ps, d, n).unwrap();
            let moved = is_admissible_sequence_prefix(&shifted, d, n).unwrap();
            assert_eq!(plain.minimum, moved.minimum);
            assert_eq!(plain.holds, moved.holds);
        }
    }
}

/// The corner-parking shift works for any anchor, not just the ones the
/// certificates happen to use: after shifting, the anchor's leading digits
/// spell the box sides exactly.
#[test]
fn corner_shift_parks_arbitrary_anchors() {
    let mut rng = StdRng::seed_from_u64(42);
    for _ in 0..50 {
        let dims = rng.random_range(2..=3);
        let d = rng.random_range(1..=2);
        let d0 = d; // t = 0
        let epsilon = BigRational::new(BigInt::from(1), BigInt::from(2 * (dims - 1) * d0));
        let hypothesis = 8 * d0 * (dims - 1) * (dims - 1);
        let m = hypothesis + rng.random_range(0..=6);
        let params = derive_params(dims, d, 0, m, 1, epsilon, no_exclusions(dims)).unwrap();
        for base in [2u32, 3] {
            let gamma = gamma_digits(&params, base).unwrap();
            let anchor = random_point(&mut rng, base, dims, m);
            let w = theorem1_shift(&anchor, &gamma, m).unwrap();
            let parked = anchor.add(&w).unwrap();
            for i in 0..dims {
                let side = match gamma.coord(i) {
                    lowdisc::BoxCoordinate::Fraction(g) => g.clone(),
                    lowdisc::BoxCoordinate::Full => unreachable!(),
                };
                assert_eq!(parked.coord(i).truncated(params.side_lengths[i]).unwrap(), side);
            }
            // the parked anchor itself lies outside its own box (anchored
            // boxes are open at the corner), so it never inflates the count
            assert!(!gamma.indicator(&parked).unwrap());
        }
    }
}

/// Small random systems of distinct monic irreducibles: the (d, t) pair the
/// certificate derives from the degrees is consistent with what the scans
/// measure. The sequence-form admissibility check passes at d = sum of
/// degrees, and the windowed net check passes at u = 0 with e = degrees.
#[test]
fn random_classical_systems_live_up_to_their_certificates() {
    let mut rng = StdRng::seed_from_u64(43);
    for base in [2u32, 3] {
        let mut pool: Vec<PrimeFieldPoly> = Vec::new();
        for deg in 1..=2usize {
            pool.extend(
                monic_polys_of_degree(base, deg)
                    .unwrap()
                    .into_iter()
                    .filter(|p| p.is_irreducible().unwrap()),
            );
        }
        for _ in 0..6 {
            let s = rng.random_range(1..=2usize);
            let mut picks = Vec::new();
            while picks.len() < s {
                let candidate = pool[rng.random_range(0..pool.len())].clone();
                if !picks.contains(&candidate) {
                    picks.push(candidate);
                }
            }
            let (d, t) = certificate_params(&picks).unwrap();
            assert_eq!(t, d - s);
            let degrees: Vec<usize> =
                picks.iter().map(|p| p.degree().unwrap()).collect();
            assert_eq!(d, degrees.iter().sum::<usize>());

            let window = if base == 2 { 4 } else { 3 };
            let m = window + 2;
            let sys = build_niederreiter(base, &picks, m).unwrap();
            let count = u64::from(base).pow(m as u32);
            let points = sys.points(count).unwrap();
            let adm = is_admissible_sequence_prefix(&points, d, count as usize).unwrap();
            assert!(adm.holds, "base {} polys {:?} d {}", base, picks, d);
            let seq = is_sequence_prefix(&points, 0, &degrees, window, 1).unwrap();
            assert!(seq.holds, "base {} polys {:?}", base, picks);
        }
    }
}

/// Local discrepancy responds linearly to removing a point: deleting a point
/// inside the box lowers the count by one and shrinks N by one, so the two
/// measurements must disagree by exactly 1 - volume or volume.
#[test]
fn local_discrepancy_point_removal_accounting() {
    let mut rng = StdRng::seed_from_u64(44);
    for _ in 0..40 {
        let base = [2u32, 3][rng.random_range(0..2)];
        let dim = rng.random_range(1..=2);
        let m = rng.random_range(1..=4);
        let n = rng.random_range(2..=12);
        let ps = random_point_set(&mut rng, base, dim, m, n);
        let gamma_point = random_point(&mut rng, base, dim, m);
        let sides: Vec<DigitVector> = gamma_point.coords().to_vec();
        if sides.iter().any(|s| s.is_zero()) {
            continue; // zero side means an empty box; nothing to account for
        }
        let gamma = AnchoredBox::from_digit_vectors(sides).unwrap();
        let full = local_discrepancy(&ps, &gamma).unwrap();
        let removed_inside = gamma.indicator(ps.point(n - 1)).unwrap();
        let trimmed = PointSet::new(ps.points()[..n - 1].to_vec(), "trimmed".into()).unwrap();
        let part = local_discrepancy(&trimmed, &gamma).unwrap();
        let diff = full - part;
        let expected = if removed_inside {
            BigRational::from_integer(BigInt::from(1)) - gamma.volume()
        } else {
            -gamma.volume()
        };
        assert_eq!(diff, expected);
        assert!(diff.abs() <= BigRational::from_integer(BigInt::from(1)));
    }
}
