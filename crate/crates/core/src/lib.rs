//! Digital (t,m,s)-nets and (t,s)-sequences over prime bases.
//!
//! This crate builds low-discrepancy point sets from systems of generating
//! matrices over GF(b), verifies their structural guarantees, and measures
//! them:
//!
//! - [`badic`]: carry-free base-b digit arithmetic on fractions and integers,
//!   with the b-adic valuations the verification routines are built on.
//! - [`gfpoly`]: polynomials over prime fields and the Laurent coefficient
//!   extraction the classical matrix construction is defined by.
//! - [`generators`]: generating-matrix systems, the classical construction
//!   from irreducible polynomials, point generation, and the index lift that
//!   turns a sequence prefix into a higher-dimensional net.
//! - [`verify`]: exact net / sequence window checks and pairwise
//!   admissibility scans, each reporting a canonical counterexample on
//!   failure.
//! - [`discrepancy`]: exact local discrepancy of anchored boxes and exact
//!   star discrepancy by corner enumeration.
//! - [`witness`]: constructive lower-bound certificates that pick a digital
//!   shift and an anchored box, measure the shifted set, and compare the
//!   exact deficiency against closed-form bounds.
//!
//! Everything is exact: values are rationals or integer exponents, never
//! floats.

pub mod badic;
pub mod discrepancy;
pub mod error;
pub mod generators;
pub mod gfpoly;
pub mod verify;
pub mod witness;

pub use badic::{DigitVector, Point};
pub use discrepancy::{AnchoredBox, BoxCoordinate, StarDiscrepancy};
pub use error::{Error, Result};
pub use generators::{GeneratorSystem, PointSet};
pub use gfpoly::PrimeFieldPoly;
pub use verify::{AdmissibilityOutcome, NetCheckOutcome, SequenceCheckOutcome};
pub use witness::{CertificateMode, WitnessParams, WitnessReport};
