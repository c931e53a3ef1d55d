use serde::{Deserialize, Serialize};

use super::{verify_optimal, TheoremError};
use crate::exact::{RVector, Rational};
use crate::lp::{farkas_separate, FarkasVerdict, LpProblem};
use crate::vertex::{enumerate_basic_optimal, is_bounded, Boundedness, VertexSet};

/// An optimal point written as a convex combination of basic optimal
/// solutions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDecomposition {
    pub point: RVector,
    pub vertices: VertexSet,
    /// Aligned with `vertices`.
    pub weights: Vec<Rational>,
}

impl FaceDecomposition {
    /// `Σ weight_i · vertex_i`.
    pub fn reconstruct(&self) -> RVector {
        let mut acc = RVector::zeros(self.point.dim());
        for (w, v) in self.weights.iter().zip(self.vertices.iter()) {
            acc = acc
                .axpy(w, &v.x)
                .expect("vertices share the point's dimension");
        }
        acc
    }
}

/// Decomposes an optimal `y` over the basic optimal solutions Y*.
///
/// Requires a bounded feasible set; on an unbounded one the optimal face
/// can contain points outside the hull of Y*, and the error carries the
/// recession ray that shows it.
pub fn optimal_face_decompose(
    prob: &LpProblem,
    y: &RVector,
) -> Result<FaceDecomposition, TheoremError> {
    if let Boundedness::UnboundedRay { ray } = is_bounded(prob.a(), prob.b())? {
        return Err(TheoremError::UnboundedFeasibleSet { ray });
    }
    verify_optimal(prob, y)?;
    let vertices = enumerate_basic_optimal(prob)?;
    match farkas_separate(y, &vertices.points())? {
        FarkasVerdict::Weights { alpha } => Ok(FaceDecomposition {
            point: y.clone(),
            vertices,
            weights: alpha,
        }),
        FarkasVerdict::Separator { cert } => Err(TheoremError::Internal(format!(
            "optimal point {y} is separated from the basic optima by q = {}, beta = {} \
             on a bounded feasible set",
            cert.q, cert.beta
        ))),
    }
}
