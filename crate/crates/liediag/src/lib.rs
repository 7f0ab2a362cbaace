//! Labeled-digraph ("diagram") view of Lie algebra representations over exact
//! rationals, with the orbit normal-form machinery for strictly triangular
//! representations: symmetric/exterior power constructions, walk-matrix
//! exponentials, greedy general-position patterns and descent enumeration.

pub mod diagram;
pub mod exact;
pub mod families;
pub mod io;
pub mod lambda;
pub mod lie;
pub mod normal_form;
pub mod verify;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("forms over different algebras (dims {0} vs {1})")]
    AlgebraMismatch(usize, usize),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiFailure(String, String, String),
    #[error("bracket table entry ({i}, {j}) has length {got}, expected {expected}")]
    BadBracketEntry {
        i: usize,
        j: usize,
        got: usize,
        expected: usize,
    },
    #[error("not a representation: homomorphism fails on basis pair ({0}, {1})")]
    NotRepresentation(String, String),
    #[error("diagram is not strictly triangular: edge ({0}, {1})")]
    NotStrictlyTriangular(usize, usize),
    #[error("edge ({0}, {1}) leaves the vertex subset")]
    ClosureViolation(usize, usize),
    #[error("parameterized input where concrete scalars are required")]
    ParameterizedInput,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
