//! Certificate-producing checks of structural facts about optimal solutions:
//! support substitution, uniqueness, optimal-face decomposition, and the
//! interval-matrix sandwich.

mod face;
mod interval;
mod nonsub;
mod uniqueness;

pub use face::{optimal_face_decompose, FaceDecomposition};
pub use interval::{check_interval_relaxation, IntervalCheck, IntervalData};
pub use nonsub::{nonsub_verify, NonsubCertificate};
pub use uniqueness::{
    appa_alternative_test, check_witness, decide_unique, perturbation_holds, PerturbationVerdict,
    UniquenessVerdict,
};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactError, RVector, Rational};
use crate::lp::{solve, DualSolution, LpError, LpProblem, PrimalSolution, SolveOutcome};
use crate::vertex::VertexError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error("coordinate {index} is negative")]
    NegativeCoordinate { index: usize },
    #[error("point is not feasible for A x = b, x ≥ 0")]
    InfeasiblePoint,
    #[error("problem has no optimal solution (solver verdict: {})", .outcome.kind())]
    ProblemNotOptimal { outcome: SolveOutcome },
    #[error("point is feasible but not optimal: value {value}, optimum {optimum} (gap {gap})")]
    Suboptimal {
        value: Rational,
        optimum: Rational,
        gap: Rational,
    },
    #[error("x* is positive at coordinate {index} where x̄ is zero")]
    SupportViolation { index: usize },
    #[error("x̄ is not basic: its support columns are dependent (use decide_unique instead)")]
    NotBasic,
    #[error("perturbation direction q must be nonzero")]
    ZeroDirection,
    #[error("perturbation size must be positive, got {0}")]
    NonPositiveDelta(Rational),
    #[error("feasible set is unbounded along ray {ray}; optimal-face decomposition requires a bounded feasible set")]
    UnboundedFeasibleSet { ray: RVector },
    #[error("interval bounds out of order at (row {}, column {})", .row + 1, .col + 1)]
    IntervalOrder { row: usize, col: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// Indices where a nonnegative vector is zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroSet {
    #[serde(with = "crate::one_based")]
    pub indices: Vec<usize>,
}

pub fn zero_set(xbar: &RVector) -> Result<ZeroSet, TheoremError> {
    if let Some(index) = xbar.first_negative() {
        return Err(TheoremError::NegativeCoordinate { index });
    }
    Ok(ZeroSet {
        indices: xbar.zero_indices(),
    })
}

/// Solves `prob` and confirms `x` is one of its optimal solutions, returning
/// the solver's primal/dual pair.
pub(crate) fn verify_optimal(
    prob: &LpProblem,
    x: &RVector,
) -> Result<(PrimalSolution, DualSolution), TheoremError> {
    if x.dim() != prob.n() || !prob.is_feasible(x)? {
        return Err(TheoremError::InfeasiblePoint);
    }
    match solve(prob) {
        SolveOutcome::Optimal { primal, dual } => {
            let value = prob.objective(x)?;
            if value != primal.value {
                let gap = &primal.value - &value;
                return Err(TheoremError::Suboptimal {
                    value,
                    optimum: primal.value,
                    gap,
                });
            }
            Ok((primal, dual))
        }
        outcome => Err(TheoremError::ProblemNotOptimal { outcome }),
    }
}
