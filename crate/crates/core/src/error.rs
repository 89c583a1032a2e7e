use thiserror::Error;

use crate::polygon::Diagonal;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid diagonal ({a},{b}) for the {vertices}-gon")]
    InvalidDiagonal { a: u32, b: u32, vertices: u32 },
    #[error("({a},{b}) is not a boundary edge of the {vertices}-gon")]
    InvalidBoundaryEdge { a: u32, b: u32, vertices: u32 },
    #[error("not a triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("diagonal {0} is not in the triangulation")]
    DiagonalNotInTriangulation(Diagonal),
    /// The requested size would exceed the configured node bound.
    #[error("resource limit: n = {n} needs {required} nodes, bound is {limit}")]
    ResourceLimit {
        n: usize,
        required: usize,
        limit: usize,
    },
    #[error("size n = {0} is out of range for this operation")]
    SizeOutOfRange(usize),

    #[error("not a closed walk: {0}")]
    NotAWalk(String),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("cycle labels differ: {left:?} vs {right:?}")]
    LabelMismatch { left: Vec<u16>, right: Vec<u16> },
    #[error("graph contains a triangle on nodes {0:?}")]
    TriangleFound([usize; 3]),

    #[error("arity mismatch: {left} vs {right} variables")]
    ArityMismatch { left: usize, right: usize },
    #[error("exact division failed: divisor does not divide dividend")]
    NotDivisible,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("variable x{0} set to zero but occurs with a negative exponent")]
    ZeroToNegativePower(usize),
    #[error("cannot parse Laurent polynomial: {0}")]
    Parse(String),

    #[error("inconsistent cluster variable for diagonal {0}")]
    InconsistentVariable(Diagonal),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("class is not in the span of the basis classes")]
    NotInSpan,
    #[error("kernel rank {found} differs from expected {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("exchange for {0:?} is not expressible in the endpoint-1 basis")]
    NotExpressible([u16; 4]),
}
