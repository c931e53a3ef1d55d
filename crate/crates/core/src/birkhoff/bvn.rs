use serde::{Deserialize, Serialize};

use super::{build_constraints, vectorize, BirkhoffError, DoublyStochastic, PermutationMatrix};
use crate::exact::{RMatrix, Rational};
use crate::lp::{farkas_separate, FarkasVerdict};
use crate::par::{self, Execution};
use crate::vertex::enumerate_basic_with;

/// Largest `n` accepted by [`bvn_decompose`] (720 candidate permutations).
pub const MAX_BVN_N: usize = 6;
/// Largest `n` accepted by [`verify_vertex_set`] (9 variables).
pub const MAX_VERTEX_CHECK_N: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BvnTerm {
    pub weight: Rational,
    #[serde(flatten)]
    pub perm: PermutationMatrix,
}

/// A convex combination of permutation matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BvnDecomposition {
    pub terms: Vec<BvnTerm>,
}

impl BvnDecomposition {
    pub fn reconstruct(&self, n: usize) -> RMatrix {
        let mut m = RMatrix::zeros(n, n);
        for t in &self.terms {
            for (r, &s) in t.perm.sigma().iter().enumerate() {
                m[(r, s)] += &t.weight;
            }
        }
        m
    }

    pub fn weight_sum(&self) -> Rational {
        self.terms.iter().map(|t| &t.weight).sum()
    }
}

/// The `k`-th permutation of `0..n` in lexicographic order.
fn nth_permutation(n: usize, mut k: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut fact: usize = (1..n).product();
    let mut out = Vec::with_capacity(n);
    for left in (1..=n).rev() {
        let i = k / fact;
        k %= fact;
        out.push(pool.remove(i));
        if left > 1 {
            fact /= left - 1;
        }
    }
    out
}

/// All `n!` permutation matrices in lexicographic order of sigma.
pub fn permutations(n: usize, exec: Execution) -> Vec<PermutationMatrix> {
    let count: usize = (1..=n).product();
    par::map_range(count, exec, |k| PermutationMatrix {
        sigma: nth_permutation(n, k),
    })
}

pub fn bvn_decompose(p: &DoublyStochastic) -> Result<BvnDecomposition, BirkhoffError> {
    bvn_decompose_with(p, Execution::default())
}

/// Writes `P` as a convex combination of permutation matrices by solving
/// for weights over all `n!` of them, which are exactly the vertices of the
/// doubly stochastic polytope. Only terms with positive weight are kept.
pub fn bvn_decompose_with(
    p: &DoublyStochastic,
    exec: Execution,
) -> Result<BvnDecomposition, BirkhoffError> {
    let n = p.n();
    if n > MAX_BVN_N {
        return Err(BirkhoffError::Capacity { n, max: MAX_BVN_N });
    }
    let perms = permutations(n, exec);
    let points = par::map(&perms, exec, PermutationMatrix::vectorized);
    let target = vectorize(p.matrix())?;
    let alpha = match farkas_separate(&target, &points)? {
        FarkasVerdict::Weights { alpha } => alpha,
        FarkasVerdict::Separator { cert } => {
            return Err(BirkhoffError::Internal(format!(
                "doubly stochastic matrix separated from the permutation matrices by q = {}",
                cert.q
            )))
        }
    };
    let terms = alpha
        .into_iter()
        .zip(perms)
        .filter(|(w, _)| w.is_positive())
        .map(|(weight, perm)| BvnTerm { weight, perm })
        .collect();
    let dec = BvnDecomposition { terms };
    if dec.reconstruct(n) != *p.matrix() || !dec.weight_sum().is_one() {
        return Err(BirkhoffError::Internal(
            "decomposition does not reconstruct P".into(),
        ));
    }
    Ok(dec)
}

/// Outcome of comparing the basic solutions of the doubly stochastic
/// system with the permutation matrices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexSetCheck {
    pub n: usize,
    pub holds: bool,
    pub vertex_count: usize,
    pub permutation_count: usize,
}

pub fn check_vertex_set(n: usize, exec: Execution) -> Result<VertexSetCheck, BirkhoffError> {
    if n > MAX_VERTEX_CHECK_N {
        return Err(BirkhoffError::Capacity {
            n,
            max: MAX_VERTEX_CHECK_N,
        });
    }
    let sys = build_constraints(n)?;
    let vertices = enumerate_basic_with(&sys.stacked(), &sys.rhs, exec)?;
    let mut perms: Vec<_> = permutations(n, exec)
        .iter()
        .map(PermutationMatrix::vectorized)
        .collect();
    perms.sort();
    Ok(VertexSetCheck {
        n,
        holds: vertices.points() == perms,
        vertex_count: vertices.len(),
        permutation_count: perms.len(),
    })
}

/// Whether the basic solutions of `[E1; E2] x = 1, x ≥ 0` are exactly the
/// vectorized `n × n` permutation matrices.
pub fn verify_vertex_set(n: usize) -> Result<bool, BirkhoffError> {
    Ok(check_vertex_set(n, Execution::default())?.holds)
}
