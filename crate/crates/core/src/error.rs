use std::fmt;

use thiserror::Error;

/// Row/column shape of a matrix or vector, used in error messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub rows: usize,
    pub cols: usize,
}

impl Shape {
    pub fn new(rows: usize, cols: usize) -> Self {
        Self { rows, cols }
    }

    pub fn vector(len: usize) -> Self {
        Self { rows: len, cols: 1 }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {lhs} vs {rhs}")]
    Dimension {
        op: &'static str,
        lhs: Shape,
        rhs: Shape,
    },

    #[error("domain error in {op} at entry ({row}, {col}): {reason}")]
    Domain {
        op: &'static str,
        row: usize,
        col: usize,
        reason: String,
    },

    #[error("non-finite value {value} at entry ({row}, {col})")]
    NonFinite { row: usize, col: usize, value: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown elementwise function `{0}`")]
    UnknownFunction(String),

    #[error("matrix is singular to working precision (pivot {pivot})")]
    Singular { pivot: usize },

    #[error("basis of {kind} supports derivatives up to order {max}, requested {requested}")]
    DerivativeOrder {
        kind: &'static str,
        max: usize,
        requested: usize,
    },

    #[error("quadrature with {points} points is exact to degree {available}, integrand needs {required}")]
    QuadratureTooLow {
        points: usize,
        available: usize,
        required: usize,
    },

    #[error("basis violates the essential boundary conditions: {0}")]
    BoundaryCondition(String),

    #[error("finite-difference column {column}: {source}")]
    FiniteDifference {
        column: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("iteration {iteration}: {source}")]
    Iteration {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
