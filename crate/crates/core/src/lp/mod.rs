//! Standard-form linear programs, the exact simplex solver, and the duality
//! and Farkas certificates it produces.

mod certificate;
mod problem;
mod simplex;

pub use certificate::{
    check_farkas, complementary_slackness_check, farkas_separate, FarkasCertificate, FarkasVerdict,
};
pub use problem::{DualSolution, LpProblem, PrimalSolution, SolveOutcome};
pub use simplex::solve;

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LpError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("primal point is not feasible (needs A x = b and x ≥ 0)")]
    PrimalInfeasible,
    #[error("dual point violates yᵀA ≥ pᵀ at column {column}")]
    DualInfeasible { column: usize },
    #[error("convex-hull test needs at least one point")]
    NoPoints,
    #[error("certificate check failed: {0}")]
    CertificateViolated(String),
}
