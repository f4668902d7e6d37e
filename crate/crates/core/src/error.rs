use thiserror::Error;

/// Crate-wide error type. Every precondition violation maps to a distinct
/// variant so callers (and the CLI) can report exactly what was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base must be at least 2, got {0}")]
    BaseTooSmall(u32),

    #[error("base {0} is not prime")]
    BaseNotPrime(u32),

    #[error("digit {digit} at position {position} is not a base-{base} digit")]
    DigitOutOfRange { digit: u8, position: usize, base: u32 },

    #[error("mixed bases: {0} vs {1}")]
    BaseMismatch(u32, u32),

    #[error("mixed precisions: {0} vs {1}")]
    PrecisionMismatch(usize, usize),

    #[error("mixed dimensions: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("truncation to {requested} digits exceeds precision {precision}")]
    TruncationTooLong { requested: usize, precision: usize },

    #[error("cannot pad from {precision} digits down to {requested}")]
    PaddingTooShort { requested: usize, precision: usize },

    #[error("b^m does not fit in 64 bits (base {base}, m {m})")]
    WidthOverflow { base: u32, m: usize },

    #[error("integer {n} needs more than {m} base-{base} digits")]
    IntTooWide { n: u64, base: u32, m: usize },

    #[error("a point needs at least one coordinate")]
    EmptyPoint,

    #[error("a point set needs at least one point")]
    EmptyPointSet,

    #[error("cannot parse {0:?} as {1}")]
    Parse(String, &'static str),

    #[error("digit text is only defined for bases up to 10, got {0}")]
    BaseNotPrintable(u32),

    // Polynomials over Z_p.
    #[error("polynomial moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("division by the zero polynomial")]
    PolyDivisionByZero,

    #[error("generating polynomial {0} must be monic")]
    NotMonic(String),

    #[error("generating polynomial {0} must be non-constant")]
    ConstantPolynomial(String),

    #[error("generating polynomial {0} is reducible")]
    NotIrreducible(String),

    #[error("generating polynomials must be pairwise distinct, {0} repeats")]
    DuplicatePolynomial(String),

    // Generator systems.
    #[error("generator matrix {index} is not {m}x{m}")]
    MatrixShape { index: usize, m: usize },

    #[error("index {n} is out of range for {m} base-{base} digits")]
    IndexTooLarge { n: u64, base: u32, m: usize },

    #[error("point count {got} is not b^m = {expected}")]
    WrongPointCount { got: usize, expected: u64 },

    #[error("depth modulus at coordinate {0} must be at least 1")]
    DepthModulusZero(usize),

    // Structural checks.
    #[error("check needs depth {required} but points carry {precision} digits")]
    PrecisionTooLow { precision: usize, required: usize },

    #[error("quality offset u={u} exceeds m={m}")]
    QualityTooLarge { u: usize, m: usize },

    #[error("need {required} points, got {got}")]
    NotEnoughPoints { got: usize, required: u64 },

    // Witness construction.
    #[error("witness construction needs at least 2 coordinates, got {0}")]
    WitnessDimensionTooSmall(usize),

    #[error("admissibility margin d must be at least 1, got {0}")]
    MarginTooSmall(usize),

    #[error("pin stride multiplier must be at least 1")]
    PinStrideZero,

    #[error("epsilon must satisfy 0 < eps <= {max}, got {got}")]
    EpsilonOutOfRange { max: String, got: String },

    #[error("excluded-position set for coordinate {coordinate} leaves the range 0..{m_dot}")]
    ExclusionOutOfRange { coordinate: usize, m_dot: usize },

    #[error("expected {expected} excluded-position sets, got {got}")]
    ExclusionCountMismatch { expected: usize, got: usize },

    #[error("m={m} leaves {got} digits for the last coordinate block, need at least 1")]
    FinalBlockEmpty { m: usize, got: i64 },

    #[error("m={m} is below the schedule hypothesis threshold {threshold}")]
    HypothesisNotMet { m: usize, threshold: String },

    #[error("m={m} is below the certificate threshold {threshold}")]
    ThresholdNotMet { m: usize, threshold: u64 },

    #[error("anchor point does not reproduce the box prefix at coordinate {coordinate}")]
    AnchorMismatch { coordinate: usize },

    #[error("box coordinate {0} is the full interval; expected a digit fraction")]
    FullCoordinate(usize),

    // Discrepancy.
    #[error("refusing: {cells} grid cells x {points} points exceeds budget {budget}")]
    BudgetExceeded { cells: u128, points: usize, budget: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
