//! Shared fixtures for the benchmark suite: the classical systems the other
//! crates exercise most, at sizes that keep one iteration under a second.

use lowdisc::generators::build_niederreiter;
use lowdisc::{GeneratorSystem, PointSet, PrimeFieldPoly};

/// The 2-D system from (x, x+1) over GF(2).
pub fn pair_system(m: usize) -> GeneratorSystem {
    let polys = vec![
        PrimeFieldPoly::parse("x", 2).unwrap(),
        PrimeFieldPoly::parse("x+1", 2).unwrap(),
    ];
    build_niederreiter(2, &polys, m).unwrap()
}

/// First 2^m points of the 2-D pair system.
pub fn pair_prefix(m: usize) -> PointSet {
    pair_system(m).points(1u64 << m).unwrap()
}

/// The 1-D radical-inverse system from (x) over GF(2).
pub fn vdc_system(m: usize) -> GeneratorSystem {
    let polys = vec![PrimeFieldPoly::parse("x", 2).unwrap()];
    build_niederreiter(2, &polys, m).unwrap()
}

/// First 2^m points of the radical-inverse system.
pub fn vdc_prefix(m: usize) -> PointSet {
    vdc_system(m).points(1u64 << m).unwrap()
}
