use serde::{Deserialize, Deserializer, Serialize};

use super::LpError;
use crate::exact::{RMatrix, RVector, Rational};

/// `maximize p·x subject to A x = b, x ≥ 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LpProblem {
    #[serde(rename = "A")]
    a: RMatrix,
    b: RVector,
    p: RVector,
}

impl LpProblem {
    pub fn new(a: RMatrix, b: RVector, p: RVector) -> Result<Self, LpError> {
        if b.dim() != a.rows() {
            return Err(LpError::InvalidProblem(format!(
                "b has {} entries but A has {} rows",
                b.dim(),
                a.rows()
            )));
        }
        if p.dim() != a.cols() {
            return Err(LpError::InvalidProblem(format!(
                "p has {} entries but A has {} columns",
                p.dim(),
                a.cols()
            )));
        }
        if a.cols() == 0 {
            return Err(LpError::InvalidProblem("problem has no variables".into()));
        }
        Ok(LpProblem { a, b, p })
    }

    pub fn a(&self) -> &RMatrix {
        &self.a
    }

    pub fn b(&self) -> &RVector {
        &self.b
    }

    pub fn p(&self) -> &RVector {
        &self.p
    }

    /// Number of equality constraints.
    pub fn m(&self) -> usize {
        self.a.rows()
    }

    /// Number of variables.
    pub fn n(&self) -> usize {
        self.a.cols()
    }

    /// Same constraints, different objective.
    pub fn with_objective(&self, p: RVector) -> Result<Self, LpError> {
        LpProblem::new(self.a.clone(), self.b.clone(), p)
    }

    /// Same matrix and objective, different right-hand side.
    pub fn with_rhs(&self, b: RVector) -> Result<Self, LpError> {
        LpProblem::new(self.a.clone(), b, self.p.clone())
    }

    pub fn objective(&self, x: &RVector) -> Result<Rational, LpError> {
        Ok(self.p.dot(x)?)
    }

    /// `A x = b` and `x ≥ 0`, checked exactly.
    pub fn is_feasible(&self, x: &RVector) -> Result<bool, LpError> {
        Ok(x.is_nonnegative() && self.a.mul_vec(x)? == self.b)
    }

    /// First column `j` with `yᵀA_j < p_j`, if any.
    pub fn dual_violation(&self, y: &RVector) -> Result<Option<usize>, LpError> {
        let ya = self.a.left_mul_vec(y)?;
        Ok((0..self.n()).find(|&j| ya[j] < self.p[j]))
    }
}

#[derive(Deserialize)]
struct RawProblem {
    #[serde(rename = "A")]
    a: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    p: Vec<Rational>,
}

impl<'de> Deserialize<'de> for LpProblem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RawProblem::deserialize(deserializer)?;
        let a =
            RMatrix::from_rows_with_cols(raw.a, raw.p.len()).map_err(serde::de::Error::custom)?;
        LpProblem::new(a, raw.b.into(), raw.p.into()).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimalSolution {
    pub x: RVector,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualSolution {
    pub y: RVector,
}

/// Verdict of [`solve`](super::solve), each variant carrying its own proof.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolveOutcome {
    /// Primal optimum plus a dual optimum of equal value.
    Optimal {
        primal: PrimalSolution,
        dual: DualSolution,
    },
    /// `wᵀA ≤ 0` and `wᵀb > 0`, so no `x ≥ 0` solves `A x = b`.
    Infeasible { witness: RVector },
    /// `A r = 0`, `r ≥ 0`, `p·r > 0`.
    Unbounded { ray: RVector },
}

impl SolveOutcome {
    pub fn kind(&self) -> &'static str {
        match self {
            SolveOutcome::Optimal { .. } => "optimal",
            SolveOutcome::Infeasible { .. } => "infeasible",
            SolveOutcome::Unbounded { .. } => "unbounded",
        }
    }

    pub fn is_optimal(&self) -> bool {
        matches!(self, SolveOutcome::Optimal { .. })
    }

    pub fn optimal_value(&self) -> Option<&Rational> {
        match self {
            SolveOutcome::Optimal { primal, .. } => Some(&primal.value),
            _ => None,
        }
    }

    /// Re-checks the certificate carried by this outcome against `prob`.
    pub fn certify(&self, prob: &LpProblem) -> Result<(), LpError> {
        let fail = |what: &str| Err(LpError::CertificateViolated(what.to_string()));
        match self {
            SolveOutcome::Optimal { primal, dual } => {
                if !prob.is_feasible(&primal.x)? {
                    return fail("primal point is not feasible");
                }
                if prob.objective(&primal.x)? != primal.value {
                    return fail("reported value differs from p·x");
                }
                if prob.dual_violation(&dual.y)?.is_some() {
                    return fail("dual point violates yᵀA ≥ pᵀ");
                }
                if dual.y.dot(prob.b())? != primal.value {
                    return fail("strong duality p·x = y·b fails");
                }
            }
            SolveOutcome::Infeasible { witness } => {
                let wa = prob.a().left_mul_vec(witness)?;
                if wa.iter().any(Rational::is_positive) {
                    return fail("infeasibility witness has wᵀA > 0 somewhere");
                }
                if !witness.dot(prob.b())?.is_positive() {
                    return fail("infeasibility witness has wᵀb ≤ 0");
                }
            }
            SolveOutcome::Unbounded { ray } => {
                if !ray.is_nonnegative() {
                    return fail("unbounded ray has a negative entry");
                }
                if !prob.a().mul_vec(ray)?.is_zero() {
                    return fail("unbounded ray has A r ≠ 0");
                }
                if !prob.p().dot(ray)?.is_positive() {
                    return fail("unbounded ray has p·r ≤ 0");
                }
            }
        }
        Ok(())
    }
}
