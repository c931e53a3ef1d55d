//! Basic solutions of `A x = b, x ≥ 0`: enumeration, the optimal subset,
//! boundedness, and the extreme-point test.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{
    columns_independent, rank, solve_unique, ExactError, RMatrix, RVector, Rational,
};
use crate::lp::{solve, LpError, LpProblem, SolveOutcome};
use crate::par::{self, Execution};

/// Largest column count [`enumerate_basic`] accepts; the subset count grows
/// exponentially past this.
pub const MAX_ENUM_COLUMNS: usize = 30;

const BATCH: usize = 2048;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VertexError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error("enumeration over {n} columns exceeds the capacity of {MAX_ENUM_COLUMNS}")]
    Capacity { n: usize },
    #[error("problem has no optimal solution (solver verdict: {})", .outcome.kind())]
    NotOptimal { outcome: SolveOutcome },
    #[error("the system A x = b, x ≥ 0 is infeasible")]
    InfeasibleSystem { witness: RVector },
    #[error("point is not feasible for A x = b, x ≥ 0")]
    InfeasiblePoint,
}

/// A feasible point whose positive coordinates select independent columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasicSolution {
    pub x: RVector,
    #[serde(with = "crate::one_based")]
    pub support: Vec<usize>,
}

impl BasicSolution {
    fn from_point(x: RVector) -> Self {
        let support = x.support();
        BasicSolution { x, support }
    }
}

/// Distinct basic solutions in lexicographic order of `x`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VertexSet {
    pub vertices: Vec<BasicSolution>,
}

impl VertexSet {
    fn from_points(points: impl IntoIterator<Item = RVector>) -> Self {
        let unique: BTreeSet<RVector> = points.into_iter().collect();
        VertexSet {
            vertices: unique.into_iter().map(BasicSolution::from_point).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn points(&self) -> Vec<RVector> {
        self.vertices.iter().map(|v| v.x.clone()).collect()
    }

    pub fn contains(&self, x: &RVector) -> bool {
        self.vertices.binary_search_by(|v| v.x.cmp(x)).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, BasicSolution> {
        self.vertices.iter()
    }
}

/// All basic solutions of `A x = b, x ≥ 0` (the set X*).
pub fn enumerate_basic(a: &RMatrix, b: &RVector) -> Result<VertexSet, VertexError> {
    enumerate_basic_with(a, b, Execution::default())
}

/// [`enumerate_basic`] with an explicit execution mode.
///
/// Every column subset of size at most `rank(A)` is tried: if its columns
/// are independent and the restricted system has a nonnegative solution,
/// that solution (padded with zeros) is basic. Different subsets can land on
/// the same degenerate point, so results are deduplicated by value.
pub fn enumerate_basic_with(
    a: &RMatrix,
    b: &RVector,
    exec: Execution,
) -> Result<VertexSet, VertexError> {
    let n = a.cols();
    if n > MAX_ENUM_COLUMNS {
        return Err(VertexError::Capacity { n });
    }
    if b.dim() != a.rows() {
        return Err(ExactError::DimensionMismatch {
            expected: a.rows(),
            found: b.dim(),
        }
        .into());
    }
    let r = rank(a);
    let mut found = Vec::new();
    for k in 0..=r {
        for chunk in &(0..n).combinations(k).chunks(BATCH) {
            let subsets: Vec<Vec<usize>> = chunk.collect();
            let hits = par::map(&subsets, exec, |s| basic_point_on(a, b, s));
            found.extend(hits.into_iter().flatten());
        }
    }
    Ok(VertexSet::from_points(found))
}

fn basic_point_on(a: &RMatrix, b: &RVector, subset: &[usize]) -> Option<RVector> {
    let z = solve_unique(&a.select_columns(subset), b).ok()??;
    if !z.is_nonnegative() {
        return None;
    }
    let mut x = RVector::zeros(a.cols());
    for (&j, v) in subset.iter().zip(z.into_inner()) {
        x[j] = v;
    }
    Some(x)
}

/// Basic optimal solutions (the set Y*): members of X* attaining the
/// optimal value of `prob`.
pub fn enumerate_basic_optimal(prob: &LpProblem) -> Result<VertexSet, VertexError> {
    let outcome = solve(prob);
    let Some(best) = outcome.optimal_value().cloned() else {
        return Err(VertexError::NotOptimal { outcome });
    };
    let all = enumerate_basic(prob.a(), prob.b())?;
    let vertices: Vec<BasicSolution> = all
        .vertices
        .into_iter()
        .filter(|v| prob.p().dot_unchecked(&v.x) == best)
        .collect();
    assert!(
        !vertices.is_empty(),
        "an optimal LP always has a basic optimal solution"
    );
    Ok(VertexSet { vertices })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Boundedness {
    Bounded,
    /// Nonzero `r ≥ 0` with `A r = 0`.
    UnboundedRay {
        ray: RVector,
    },
}

/// Decides whether the feasible set of `A x = b, x ≥ 0` is bounded.
///
/// Solves `max Σ r_j` over `A r = 0, r ≥ 0, Σ r_j ≤ 1`; the set is bounded
/// exactly when that value is zero, and otherwise the optimizer is a
/// recession direction.
pub fn is_bounded(a: &RMatrix, b: &RVector) -> Result<Boundedness, VertexError> {
    let n = a.cols();
    let feas = LpProblem::new(a.clone(), b.clone(), RVector::zeros(n))?;
    if let SolveOutcome::Infeasible { witness } = solve(&feas) {
        return Err(VertexError::InfeasibleSystem { witness });
    }
    // Variables r_1..r_n plus one slack for the normalization row.
    let mut rows = Vec::with_capacity(a.rows() + 1);
    for i in 0..a.rows() {
        let mut row = a.row(i).to_vec();
        row.push(Rational::zero());
        rows.push(row);
    }
    rows.push(vec![Rational::one(); n + 1]);
    let mut rhs = vec![Rational::zero(); a.rows()];
    rhs.push(Rational::one());
    let mut obj = vec![Rational::one(); n];
    obj.push(Rational::zero());
    let cone = LpProblem::new(RMatrix::from_rows(rows)?, rhs.into(), obj.into())?;
    match solve(&cone) {
        SolveOutcome::Optimal { primal, .. } if primal.value.is_zero() => Ok(Boundedness::Bounded),
        SolveOutcome::Optimal { primal, .. } => {
            let mut ray = primal.x.into_inner();
            ray.pop();
            Ok(Boundedness::UnboundedRay { ray: ray.into() })
        }
        other => unreachable!(
            "normalized recession LP is feasible and bounded, got {}",
            other.kind()
        ),
    }
}

/// Whether a feasible `x` is a basic solution, i.e. the columns on its
/// positive coordinates are independent.
pub fn is_extreme(a: &RMatrix, b: &RVector, x: &RVector) -> Result<bool, VertexError> {
    if x.dim() != a.cols() || !x.is_nonnegative() || &a.mul_vec(x)? != b {
        return Err(VertexError::InfeasiblePoint);
    }
    Ok(columns_independent(a, &x.support())?)
}
