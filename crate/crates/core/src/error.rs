use thiserror::Error;

use crate::diagram::Interval;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a permutation must have at least one entry")]
    Empty,

    #[error("{entries:?} is not a permutation of 1..={len}")]
    NotAPermutation { entries: Vec<i64>, len: usize },

    #[error("cannot parse {0:?} as a pattern")]
    Parse(String),

    #[error("values at positions {0} and {1} coincide, so the ordinal pattern is undefined")]
    RepeatedValue(usize, usize),

    #[error("value at position {0} is not finite")]
    NonFinite(usize),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("matrix dimensions {left:?} and {right:?} are not conformable")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("step matrix has determinant {0}, expected +1 or -1")]
    SingularMatrix(i128),

    #[error("{what} of size {size} exceeds the exhaustive limit {limit}")]
    SizeTooLarge {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("{0} is not a valid interval of {1}")]
    InvalidFlip(Interval, String),

    #[error("not a bordered cylindrical block of {0}")]
    NotABlock(String),

    #[error("no decomposition of {0} around the requested cohesive interval")]
    NoValidDecomposition(String),

    #[error("{0}")]
    NotCohesive(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
