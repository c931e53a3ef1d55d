use serde::{Deserialize, Serialize};

use super::TheoremError;
use crate::exact::{ExactError, RMatrix, RVector};

/// Entrywise lower and upper bounds around a constraint matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalData {
    #[serde(rename = "A_minus")]
    pub a_minus: RMatrix,
    #[serde(rename = "A_plus")]
    pub a_plus: RMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalCheck {
    pub holds: bool,
    /// First tight row whose sandwich fails (0-based).
    pub first_violation: Option<usize>,
}

/// For `x ≥ 0` and `A⁻ ≤ A ≤ A⁺`, every row with `A_i x = b_i` must satisfy
/// `A⁻_i x ≤ b_i ≤ A⁺_i x`. Rows that are not tight are skipped.
pub fn check_interval_relaxation(
    a: &RMatrix,
    iv: &IntervalData,
    b: &RVector,
    x: &RVector,
) -> Result<IntervalCheck, TheoremError> {
    let shape = (a.rows(), a.cols());
    for m in [&iv.a_minus, &iv.a_plus] {
        if (m.rows(), m.cols()) != shape {
            return Err(ExactError::ShapeMismatch {
                expected: shape,
                found: (m.rows(), m.cols()),
            }
            .into());
        }
    }
    if b.dim() != a.rows() {
        return Err(ExactError::DimensionMismatch {
            expected: a.rows(),
            found: b.dim(),
        }
        .into());
    }
    if let Some(index) = x.first_negative() {
        return Err(TheoremError::NegativeCoordinate { index });
    }
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            if iv.a_minus[(i, j)] > a[(i, j)] || a[(i, j)] > iv.a_plus[(i, j)] {
                return Err(TheoremError::IntervalOrder { row: i, col: j });
            }
        }
    }
    let ax = a.mul_vec(x)?;
    let lo = iv.a_minus.mul_vec(x)?;
    let hi = iv.a_plus.mul_vec(x)?;
    let first_violation =
        (0..a.rows()).find(|&i| ax[i] == b[i] && !(lo[i] <= b[i] && b[i] <= hi[i]));
    Ok(IntervalCheck {
        holds: first_violation.is_none(),
        first_violation,
    })
}
