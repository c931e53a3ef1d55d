//! Uniqueness of an optimal solution.
//!
//! An optimum `x̄` is unique exactly when the cone
//! `{h | A h = 0, h_j ≥ 0 for x̄_j = 0}` contains no nonzero `h` with
//! `p·h ≥ 0`. Coordinates on the support of `x̄` are sign-free in that cone,
//! which the LPs below encode by splitting them into two nonnegative parts.

use serde::{Deserialize, Serialize};

use super::{verify_optimal, TheoremError};
use crate::exact::{columns_independent, null_space_basis, RMatrix, RVector, Rational};
use crate::lp::{solve, LpProblem, SolveOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum UniquenessVerdict {
    Unique,
    /// `h ≠ 0`, `A h = 0`, `h ≥ 0` on the zero set of `x̄`, `p·h ≥ 0`:
    /// `x̄ + εh` is another optimum for small `ε > 0`.
    NotUnique {
        witness: RVector,
    },
}

impl UniquenessVerdict {
    pub fn is_unique(&self) -> bool {
        matches!(self, UniquenessVerdict::Unique)
    }

    pub fn witness(&self) -> Option<&RVector> {
        match self {
            UniquenessVerdict::NotUnique { witness } => Some(witness),
            UniquenessVerdict::Unique => None,
        }
    }
}

/// Exact check of the witness conditions for a non-uniqueness direction.
pub fn check_witness(prob: &LpProblem, xbar: &RVector, h: &RVector) -> Result<bool, TheoremError> {
    if h.dim() != prob.n() || h.is_zero() {
        return Ok(false);
    }
    if !prob.a().mul_vec(h)?.is_zero() {
        return Ok(false);
    }
    if xbar.zero_indices().into_iter().any(|j| h[j].is_negative()) {
        return Ok(false);
    }
    Ok(!prob.objective(h)?.is_negative())
}

fn certified(
    prob: &LpProblem,
    xbar: &RVector,
    witness: RVector,
) -> Result<UniquenessVerdict, TheoremError> {
    if !check_witness(prob, xbar, &witness)? {
        return Err(TheoremError::Internal(format!(
            "emitted non-uniqueness witness {witness} fails its own conditions"
        )));
    }
    Ok(UniquenessVerdict::NotUnique { witness })
}

/// An LP over `h` where some coordinates are free, rewritten in standard
/// form by splitting each free `h_j` into `u_j − v_j`.
struct SplitLp {
    prob: LpProblem,
    /// For each standard-form column: original coordinate and sign.
    origin: Vec<(usize, bool)>,
    dim: usize,
}

impl SplitLp {
    fn new(m: &RMatrix, rhs: RVector, cost: &RVector, free: &[bool]) -> Result<Self, TheoremError> {
        let mut origin = Vec::new();
        for (j, &is_free) in free.iter().enumerate() {
            origin.push((j, false));
            if is_free {
                origin.push((j, true));
            }
        }
        let rows = (0..m.rows())
            .map(|i| {
                origin
                    .iter()
                    .map(|&(j, neg)| if neg { -&m[(i, j)] } else { m[(i, j)].clone() })
                    .collect()
            })
            .collect();
        let c = origin
            .iter()
            .map(|&(j, neg)| if neg { -&cost[j] } else { cost[j].clone() })
            .collect();
        let prob = LpProblem::new(RMatrix::from_rows_with_cols(rows, origin.len())?, rhs, c)?;
        Ok(SplitLp {
            prob,
            origin,
            dim: free.len(),
        })
    }

    fn recover(&self, x: &RVector) -> RVector {
        let mut h = RVector::zeros(self.dim);
        for (k, &(j, neg)) in self.origin.iter().enumerate() {
            if neg {
                h[j] -= &x[k];
            } else {
                h[j] += &x[k];
            }
        }
        h
    }
}

/// Decides whether the optimum `x̄` of `prob` is its only optimum.
///
/// First, dependent support columns give a two-sided null direction at
/// once. Otherwise every nonzero cone direction must be positive somewhere
/// on the zero set, so the cone can be cut with `Σ_{x̄_j = 0} h_j = 1` and a
/// single bounded LP `max p·h` settles it: a nonnegative optimum is a
/// witness, a negative optimum or an empty slice means unique.
pub fn decide_unique(prob: &LpProblem, xbar: &RVector) -> Result<UniquenessVerdict, TheoremError> {
    verify_optimal(prob, xbar)?;
    let n = prob.n();
    let support = xbar.support();
    let zeros = xbar.zero_indices();

    if !columns_independent(prob.a(), &support)? {
        let null = null_space_basis(&prob.a().select_columns(&support));
        let v = null.first().ok_or_else(|| {
            TheoremError::Internal("dependent columns with trivial null space".into())
        })?;
        let mut h = RVector::zeros(n);
        for (&j, val) in support.iter().zip(v.iter()) {
            h[j] = val.clone();
        }
        if prob.objective(&h)?.is_negative() {
            h = h.neg();
        }
        return certified(prob, xbar, h);
    }

    if zeros.is_empty() {
        return Ok(UniquenessVerdict::Unique);
    }
    let mut normalization = vec![Rational::zero(); n];
    for &j in &zeros {
        normalization[j] = Rational::one();
    }
    let m = prob.a().vstack(&RMatrix::from_rows(vec![normalization])?)?;
    let mut rhs = RVector::zeros(prob.m() + 1);
    rhs[prob.m()] = Rational::one();
    let free: Vec<bool> = (0..n).map(|j| xbar[j].is_positive()).collect();
    let lp = SplitLp::new(&m, rhs, prob.p(), &free)?;
    match solve(&lp.prob) {
        SolveOutcome::Infeasible { .. } => Ok(UniquenessVerdict::Unique),
        SolveOutcome::Optimal { primal, .. } if primal.value.is_negative() => {
            Ok(UniquenessVerdict::Unique)
        }
        SolveOutcome::Optimal { primal, .. } => certified(prob, xbar, lp.recover(&primal.x)),
        SolveOutcome::Unbounded { .. } => Err(TheoremError::Internal(
            "normalized uniqueness cone LP is unbounded despite independent support".into(),
        )),
    }
}

/// Uniqueness test for a basic optimum via the cone LP
/// `max q·h, A h = 0, p·h = 0, h_j ≥ 0 on the zero set, q·h ≤ 1`, with
/// `q` the indicator of the zero set. The optimum is unique iff that value
/// is zero.
pub fn appa_alternative_test(
    prob: &LpProblem,
    xbar: &RVector,
) -> Result<UniquenessVerdict, TheoremError> {
    verify_optimal(prob, xbar)?;
    let n = prob.n();
    let support = xbar.support();
    if !columns_independent(prob.a(), &support)? {
        return Err(TheoremError::NotBasic);
    }
    let zeros = xbar.zero_indices();
    if zeros.is_empty() {
        // q = 0, so the objective is identically zero.
        return Ok(UniquenessVerdict::Unique);
    }

    // Coordinates: h_1..h_n, then the slack of q·h ≤ 1.
    let mut q = vec![Rational::zero(); n + 1];
    for &j in &zeros {
        q[j] = Rational::one();
    }
    let mut rows: Vec<Vec<Rational>> = (0..prob.m())
        .map(|i| {
            let mut r = prob.a().row(i).to_vec();
            r.push(Rational::zero());
            r
        })
        .collect();
    let mut p_row = prob.p().entries().to_vec();
    p_row.push(Rational::zero());
    rows.push(p_row);
    let mut cap = q.clone();
    cap[n] = Rational::one();
    rows.push(cap);
    let m = RMatrix::from_rows_with_cols(rows, n + 1)?;
    let mut rhs = RVector::zeros(prob.m() + 2);
    rhs[prob.m() + 1] = Rational::one();
    let mut free: Vec<bool> = (0..n).map(|j| xbar[j].is_positive()).collect();
    free.push(false);
    let lp = SplitLp::new(&m, rhs, &RVector::new(q), &free)?;

    match solve(&lp.prob) {
        SolveOutcome::Optimal { primal, .. } if primal.value.is_zero() => {
            Ok(UniquenessVerdict::Unique)
        }
        SolveOutcome::Optimal { primal, .. } => {
            let mut h = lp.recover(&primal.x).into_inner();
            h.pop();
            certified(prob, xbar, RVector::new(h))
        }
        other => Err(TheoremError::Internal(format!(
            "normalized cone LP came back {}",
            other.kind()
        ))),
    }
}

/// Result of re-optimizing with objective `p + δq`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PerturbationVerdict {
    /// `x̄` is still optimal.
    Holds { value: Rational },
    /// The perturbed optimum is strictly better than `x̄`.
    Beaten {
        xbar_value: Rational,
        optimum: Rational,
        better: RVector,
    },
    /// The perturbed problem has no optimum at all.
    Unbounded { ray: RVector },
}

impl PerturbationVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, PerturbationVerdict::Holds { .. })
    }
}

/// Whether `x̄` remains optimal when the objective is tilted to `p + δq`.
pub fn perturbation_holds(
    prob: &LpProblem,
    xbar: &RVector,
    q: &RVector,
    delta: &Rational,
) -> Result<PerturbationVerdict, TheoremError> {
    if q.dim() != prob.n() {
        return Err(crate::exact::ExactError::DimensionMismatch {
            expected: prob.n(),
            found: q.dim(),
        }
        .into());
    }
    if q.is_zero() {
        return Err(TheoremError::ZeroDirection);
    }
    if !delta.is_positive() {
        return Err(TheoremError::NonPositiveDelta(delta.clone()));
    }
    verify_optimal(prob, xbar)?;
    let tilted = prob.with_objective(prob.p().axpy(delta, q)?)?;
    let xbar_value = tilted.objective(xbar)?;
    match solve(&tilted) {
        SolveOutcome::Optimal { primal, .. } if primal.value == xbar_value => {
            Ok(PerturbationVerdict::Holds { value: xbar_value })
        }
        SolveOutcome::Optimal { primal, .. } => Ok(PerturbationVerdict::Beaten {
            xbar_value,
            optimum: primal.value,
            better: primal.x,
        }),
        SolveOutcome::Unbounded { ray } => Ok(PerturbationVerdict::Unbounded { ray }),
        SolveOutcome::Infeasible { .. } => Err(TheoremError::Internal(
            "x̄ is feasible yet the solver reports infeasible".into(),
        )),
    }
}
