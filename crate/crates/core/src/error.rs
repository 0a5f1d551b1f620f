use alloc::vec::Vec;

use crate::geometry::{Dynamics, TargetTag};

/// Errors raised by the geometry kernel, the solver and the checkers.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point must have at least one coordinate")]
    EmptyPoint,

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter {
        field: &'static str,
        reason: &'static str,
    },

    #[error("problem must contain at least one target")]
    NoTargets,

    #[error("dynamics {dynamics:?} is not supported with target {target:?}")]
    UnsupportedPair {
        dynamics: Dynamics,
        target: TargetTag,
    },

    #[error("point is not in the target (distance {distance})")]
    NotInTarget { distance: f64 },

    #[error("point lies in more than one target: {indices:?}")]
    MultipleActiveTargets { indices: Vec<usize> },

    #[error("expected exactly {expected} targets, found {found}")]
    WrongArity { expected: usize, found: usize },

    #[error("three-set alternative is ambiguous: point lies in targets {indices:?}")]
    AmbiguousCase { indices: Vec<usize> },

    #[error("this check requires Euclidean ball dynamics")]
    RequiresEuclidean,

    #[error("intervals must be sorted and pairwise disjoint (violated at index {index})")]
    NotSortedDisjoint { index: usize },

    #[error("triangle vertices must be distinct")]
    DegenerateTriangle,

    #[error("step schedule is not square summable")]
    InfiniteEllSquared,

    #[error("iterate diverged at iteration {iteration} (max |coordinate| = {magnitude})")]
    NonFiniteIterate { iteration: usize, magnitude: f64 },

    #[error("bounding box is empty or degenerate")]
    EmptyBBox,

    #[error("target index {index} out of range ({len} targets)")]
    IndexOutOfRange { index: usize, len: usize },
}

pub type Result<T> = core::result::Result<T, Error>;
