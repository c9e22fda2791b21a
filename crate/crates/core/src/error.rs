use thiserror::Error;

use crate::lattice::Point;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid base {0}: expected a base of at least {1}")]
    InvalidBase(u64, u64),

    #[error("base overflow: {0} does not fit in 64 bits")]
    BaseOverflow(String),

    #[error("base mismatch: expected {expected}, got {actual}")]
    BaseMismatch { expected: u64, actual: u64 },

    #[error("invalid mixed base: entry {index} does not divide its successor")]
    InvalidMixedBase { index: usize },

    #[error("digit {digit} at position {position} is out of range (bound {bound})")]
    DigitOutOfRange {
        position: usize,
        digit: String,
        bound: String,
    },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid prebasis: {0}")]
    InvalidPrebasis(String),

    #[error("invalid directive sequence: {0}")]
    InvalidDirectiveSequence(String),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: i64, max: i64 },

    #[error("map is not injective: {0}")]
    NotInjective(String),

    #[error("invalid face: {0}")]
    InvalidFace(String),

    #[error("axis {axis} out of range for dimension {dim}")]
    AxisOutOfRange { axis: usize, dim: usize },

    #[error("prebasis mismatch: {0}")]
    PrebasisMismatch(String),

    #[error("invalid lattice path: {0}")]
    InvalidPath(String),

    #[error("path is not closed")]
    OpenPath,

    #[error("edge {{{from:?}, {to:?}}} has no incident cube in the patch")]
    UnlabelableEdge { from: Point, to: Point },

    #[error("inconsistent labels on edge {{{from:?}, {to:?}}}: {witnesses:?}")]
    InconsistentLabels {
        from: Point,
        to: Point,
        /// (incident cube position, label it assigns)
        witnesses: Vec<(Point, u64)>,
    },

    #[error("inadmissible direction: {0}")]
    InadmissibleDirection(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("matrix row {0} has no positive entry, so the microtile map is undefined")]
    NotMicrotileable(usize),

    #[error("multiplier {multiplier} is not representable in base {base}")]
    NotRepresentable { multiplier: String, base: u64 },

    #[error("{p} does not divide {base}")]
    NotADivisor { p: u64, base: u64 },

    #[error("bases {0} and {1} are not divisible by the same primes")]
    PrimeSetMismatch(u64, u64),

    #[error("some prime factor of {target} does not divide {source_base}")]
    PrimeCondition { source_base: u64, target: u64 },

    #[error("enumeration of {estimate} windows exceeds the limit of {limit}")]
    EnumerationTooLarge { estimate: String, limit: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
