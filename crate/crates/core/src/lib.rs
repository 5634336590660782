//! Combinatorics of ordinal patterns in random walks.
//!
//! A walk `0, X_1, X_1 + X_2, ...` with i.i.d. steps is mapped to the permutation
//! recording the relative order of its positions. Two patterns are *equivalent*
//! when some reordering of the steps carries one onto the other for every choice
//! of step values; equivalent patterns then occur with the same probability under
//! any continuous step law.
//!
//! The crate provides:
//!
//! * [`perm`]: permutations, signed permutations, and the walk-to-pattern map;
//! * [`matrix`]: the step matrix representation and its exact determinant;
//! * [`diagram`]: edge diagrams, level actions, valid intervals and
//!   bordered cylindrical blocks;
//! * [`structure`]: irreducible and cohesive interval partitions and signed
//!   block actions;
//! * [`equivalence`]: equivalence classes by closure under valid flips, with two
//!   independent exhaustive oracles.
//!
//! All exhaustive searches are guarded by the limits in [`limits`] and fail with
//! [`Error::SizeTooLarge`] rather than silently truncating.

pub mod diagram;
pub mod equivalence;
mod error;
pub mod limits;
pub mod matrix;
pub mod perm;
pub mod structure;

pub use diagram::{DirectedInterval, Direction, EdgeDiagram, Interval, LevelOutcome};
pub use equivalence::{EquivalenceClass, FlipWitness};
pub use error::{Error, Result};
pub use matrix::{IntMatrix, StepMatrix};
pub use perm::{InflationRule, Permutation, SignedPermutation};
pub use structure::IntervalPartition;
