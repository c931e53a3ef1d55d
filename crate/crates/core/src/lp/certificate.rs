use serde::{Deserialize, Serialize};

use super::{solve, LpError, LpProblem, SolveOutcome};
use crate::exact::{RMatrix, RVector, Rational};

/// Checks `y·A^j = p_j` on every column where `x_j > 0`.
///
/// Both points must be feasible for their own side: `x` for the primal and
/// `y` for the dual `yᵀA ≥ pᵀ`.
pub fn complementary_slackness_check(
    prob: &LpProblem,
    x: &RVector,
    y: &RVector,
) -> Result<bool, LpError> {
    if x.dim() != prob.n() || !prob.is_feasible(x)? {
        return Err(LpError::PrimalInfeasible);
    }
    if let Some(column) = prob.dual_violation(y)? {
        return Err(LpError::DualInfeasible { column });
    }
    let ya = prob.a().left_mul_vec(y)?;
    Ok(x.support().into_iter().all(|j| ya[j] == prob.p()[j]))
}

/// A strict separator: `q·point + beta ≤ 0` for every point and
/// `q·target + beta > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FarkasCertificate {
    pub q: RVector,
    pub beta: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FarkasVerdict {
    /// Convex weights reproducing the target.
    Weights {
        alpha: Vec<Rational>,
    },
    Separator {
        cert: FarkasCertificate,
    },
}

/// Decides whether `target` lies in the convex hull of `points`.
///
/// Solves the feasibility problem `Σ α_i point_i = target, Σ α_i = 1, α ≥ 0`.
/// When it is infeasible the solver's witness `(q, β)` separates the target
/// from every point. The verdict is re-checked exactly before returning.
pub fn farkas_separate(target: &RVector, points: &[RVector]) -> Result<FarkasVerdict, LpError> {
    if points.is_empty() {
        return Err(LpError::NoPoints);
    }
    let d = target.dim();
    let mut columns = Vec::with_capacity(points.len());
    for pt in points {
        if pt.dim() != d {
            return Err(crate::exact::ExactError::DimensionMismatch {
                expected: d,
                found: pt.dim(),
            }
            .into());
        }
        let mut col = pt.entries().to_vec();
        col.push(Rational::one());
        columns.push(RVector::new(col));
    }
    let mut rhs = target.entries().to_vec();
    rhs.push(Rational::one());
    let prob = LpProblem::new(
        RMatrix::from_columns(&columns, d + 1)?,
        RVector::new(rhs),
        RVector::zeros(points.len()),
    )?;
    let verdict = match solve(&prob) {
        SolveOutcome::Optimal { primal, .. } => FarkasVerdict::Weights {
            alpha: primal.x.into_inner(),
        },
        SolveOutcome::Infeasible { witness } => {
            let mut w = witness.into_inner();
            let beta = w.pop().expect("witness has the normalization row");
            FarkasVerdict::Separator {
                cert: FarkasCertificate {
                    q: RVector::new(w),
                    beta,
                },
            }
        }
        SolveOutcome::Unbounded { .. } => unreachable!("zero objective cannot be unbounded"),
    };
    check_farkas(target, points, &verdict)?;
    Ok(verdict)
}

/// Exact re-check of a [`FarkasVerdict`] against its inputs.
pub fn check_farkas(
    target: &RVector,
    points: &[RVector],
    verdict: &FarkasVerdict,
) -> Result<(), LpError> {
    let fail = |what: &str| Err(LpError::CertificateViolated(what.to_string()));
    match verdict {
        FarkasVerdict::Weights { alpha } => {
            if alpha.len() != points.len() {
                return fail("weight count differs from point count");
            }
            if alpha.iter().any(Rational::is_negative) {
                return fail("negative convex weight");
            }
            if alpha.iter().sum::<Rational>() != Rational::one() {
                return fail("convex weights do not sum to one");
            }
            let mut combo = RVector::zeros(target.dim());
            for (w, pt) in alpha.iter().zip(points) {
                if !w.is_zero() {
                    combo = combo.axpy(w, pt)?;
                }
            }
            if &combo != target {
                return fail("weighted points do not reproduce the target");
            }
        }
        FarkasVerdict::Separator { cert } => {
            for pt in points {
                if (cert.q.dot(pt)? + &cert.beta).is_positive() {
                    return fail("separator has q·point + beta > 0");
                }
            }
            if !(cert.q.dot(target)? + &cert.beta).is_positive() {
                return fail("separator has q·target + beta ≤ 0");
            }
        }
    }
    Ok(())
}
