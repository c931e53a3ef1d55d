//! Exact rational scalars, vectors, matrices and elimination.

mod linalg;
mod matrix;
mod rational;
mod vector;

pub use linalg::{
    columns_independent, null_space_basis, rank, rref, solve_exact, solve_unique, Rref,
};
pub use matrix::RMatrix;
pub use rational::{rat, Rational};
pub use vector::RVector;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: expected {expected:?}, found {found:?}")]
    ShapeMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("row {row} has {found} entries, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("column index {index} out of range (matrix has {bound} columns)")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse {0:?} as a rational")]
    Parse(String),
}
