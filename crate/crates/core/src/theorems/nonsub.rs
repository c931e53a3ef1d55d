use serde::{Deserialize, Serialize};

use super::{verify_optimal, TheoremError};
use crate::exact::{RVector, Rational};
use crate::lp::{solve, LpProblem, SolveOutcome};

/// Proof that `x*` is optimal for `max p·x, A x = A x*, x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonsubCertificate {
    /// `A x*`.
    pub bstar: RVector,
    /// The original problem's dual optimum, reused unchanged.
    pub ybar: RVector,
    /// Optimal value of the substituted problem from an independent solve.
    pub p2_value: Rational,
}

/// Verifies that any `x* ≥ 0` whose support sits inside the support of an
/// optimum `x̄` is itself optimal once the right-hand side becomes `A x*`.
///
/// The dual optimum `ȳ` of the original problem stays dual feasible (the
/// constraint `yᵀA ≥ pᵀ` does not involve `b`), and complementary slackness
/// on `supp(x̄)` gives `(ȳᵀA − pᵀ) x* = 0`, hence `ȳ·b* = p·x*`. The
/// substituted problem is also solved from scratch and its value compared.
pub fn nonsub_verify(
    prob: &LpProblem,
    xbar: &RVector,
    xstar: &RVector,
) -> Result<NonsubCertificate, TheoremError> {
    let (_, dual) = verify_optimal(prob, xbar)?;
    if xstar.dim() != prob.n() {
        return Err(crate::exact::ExactError::DimensionMismatch {
            expected: prob.n(),
            found: xstar.dim(),
        }
        .into());
    }
    if let Some(index) = xstar.first_negative() {
        return Err(TheoremError::NegativeCoordinate { index });
    }
    if let Some(index) = (0..prob.n()).find(|&j| xstar[j].is_positive() && xbar[j].is_zero()) {
        return Err(TheoremError::SupportViolation { index });
    }

    let ybar = dual.y;
    let bstar = prob.a().mul_vec(xstar)?;
    let reduced = prob.a().left_mul_vec(&ybar)?.sub(prob.p())?;
    if reduced.iter().any(Rational::is_negative) {
        return Err(TheoremError::Internal(
            "dual optimum violates yᵀA ≥ pᵀ".into(),
        ));
    }
    if !reduced.dot(xstar)?.is_zero() {
        return Err(TheoremError::Internal(
            "complementary slackness fails on the support of x*".into(),
        ));
    }
    let px = prob.objective(xstar)?;
    if ybar.dot(&bstar)? != px {
        return Err(TheoremError::Internal("ȳ·b* differs from p·x*".into()));
    }

    let p2 = prob.with_rhs(bstar.clone())?;
    let p2_value = match solve(&p2) {
        SolveOutcome::Optimal { primal, .. } => primal.value,
        other => {
            return Err(TheoremError::Internal(format!(
                "substituted problem came back {}",
                other.kind()
            )))
        }
    };
    if p2_value != px {
        return Err(TheoremError::Internal(format!(
            "substituted problem optimum {p2_value} differs from p·x* = {px}"
        )));
    }
    Ok(NonsubCertificate {
        bstar,
        ybar,
        p2_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, RMatrix};

    fn prob() -> LpProblem {
        LpProblem::new(
            RMatrix::from_i64(&[&[1, 1]]),
            RVector::from_i64(&[1]),
            RVector::from_i64(&[1, 1]),
        )
        .unwrap()
    }

    fn half() -> RVector {
        RVector::new(vec![rat(1, 2), rat(1, 2)])
    }

    #[test]
    fn vertex_of_face() {
        let cert = nonsub_verify(&prob(), &half(), &RVector::from_i64(&[1, 0])).unwrap();
        assert_eq!(cert.bstar, RVector::from_i64(&[1]));
        assert_eq!(cert.ybar, RVector::from_i64(&[1]));
        assert_eq!(cert.p2_value, Rational::one());
    }

    #[test]
    fn identity_substitution() {
        let cert = nonsub_verify(&prob(), &half(), &half()).unwrap();
        assert_eq!(cert.bstar, RVector::from_i64(&[1]));
        assert_eq!(cert.p2_value, Rational::one());
    }

    #[test]
    fn zero_substitution() {
        let cert = nonsub_verify(&prob(), &half(), &RVector::zeros(2)).unwrap();
        assert_eq!(cert.bstar, RVector::zeros(1));
        assert_eq!(cert.p2_value, Rational::zero());
    }

    #[test]
    fn scaled_substitution() {
        let cert = nonsub_verify(&prob(), &half(), &RVector::from_i64(&[3, 4])).unwrap();
        assert_eq!(cert.bstar, RVector::from_i64(&[7]));
        assert_eq!(cert.p2_value, Rational::from(7));
    }

    #[test]
    fn support_must_be_contained() {
        let err = nonsub_verify(
            &prob(),
            &RVector::from_i64(&[1, 0]),
            &RVector::from_i64(&[0, 1]),
        );
        assert_eq!(err, Err(TheoremError::SupportViolation { index: 1 }));
    }

    #[test]
    fn xbar_must_be_optimal() {
        let p = prob().with_objective(RVector::from_i64(&[2, 1])).unwrap();
        let err = nonsub_verify(&p, &RVector::from_i64(&[0, 1]), &RVector::from_i64(&[0, 1]));
        assert!(matches!(err, Err(TheoremError::Suboptimal { .. })));
    }
}
