//! Exact-arithmetic linear programming toolkit whose operations return
//! checkable certificates: optimality with a matching dual, Farkas
//! separators, uniqueness witnesses, optimal-face decompositions and
//! Birkhoff–von Neumann decompositions.

pub mod birkhoff;
pub mod exact;
pub mod generate;
pub mod lp;
mod one_based;
pub mod par;
pub mod theorems;
pub mod vertex;

pub use exact::{rat, RMatrix, RVector, Rational};
pub use lp::{solve, LpProblem, SolveOutcome};
