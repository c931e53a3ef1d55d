//! Doubly stochastic matrices as the solution set of `[E1; E2] vec(B) = 1`,
//! `vec(B) ≥ 0`, their fractional-cycle splitting, and their decomposition
//! into permutation matrices.

mod bvn;
mod cycle;

pub use bvn::{
    bvn_decompose, bvn_decompose_with, check_vertex_set, permutations, verify_vertex_set,
    BvnDecomposition, BvnTerm, VertexSetCheck, MAX_BVN_N, MAX_VERTEX_CHECK_N,
};
pub use cycle::{epsilon0, find_fractional_cycle, perturb_pair, FractionalCycle};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactError, RMatrix, RVector, Rational};
use crate::lp::LpError;
use crate::vertex::VertexError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BirkhoffError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Vertex(#[from] VertexError),
    #[error("matrix must be square with n ≥ 1, got {rows}×{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("declared n = {declared} but entries are {actual}×{actual}")]
    SizeMismatch { declared: usize, actual: usize },
    #[error("entry ({}, {}) is negative", .row + 1, .col + 1)]
    NegativeEntry { row: usize, col: usize },
    #[error("row {} sums to {sum}, not 1", .row + 1)]
    RowSum { row: usize, sum: Rational },
    #[error("column {} sums to {sum}, not 1", .col + 1)]
    ColumnSum { col: usize, sum: Rational },
    #[error("sigma is not a permutation of 1..={n}")]
    NotPermutation { n: usize },
    #[error("no fractional entry: the matrix is a permutation matrix")]
    NoFractionalEntry,
    #[error("invalid fractional cycle: {0}")]
    InvalidCycle(String),
    #[error("epsilon {eps} must satisfy 0 < epsilon < {epsilon0}")]
    EpsilonOutOfRange { eps: Rational, epsilon0: Rational },
    #[error("n = {n} exceeds the limit of {max} for this operation")]
    Capacity { n: usize, max: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

/// A square nonnegative matrix whose rows and columns all sum to exactly 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawDs", into = "RawDs")]
pub struct DoublyStochastic {
    m: RMatrix,
}

#[derive(Serialize, Deserialize)]
struct RawDs {
    n: usize,
    entries: Vec<Vec<Rational>>,
}

impl TryFrom<RawDs> for DoublyStochastic {
    type Error = BirkhoffError;

    fn try_from(raw: RawDs) -> Result<Self, Self::Error> {
        if raw.entries.len() != raw.n {
            return Err(BirkhoffError::SizeMismatch {
                declared: raw.n,
                actual: raw.entries.len(),
            });
        }
        let cols = raw.entries.first().map_or(0, Vec::len);
        DoublyStochastic::new(RMatrix::from_rows_with_cols(raw.entries, cols)?)
    }
}

impl From<DoublyStochastic> for RawDs {
    fn from(ds: DoublyStochastic) -> Self {
        RawDs {
            n: ds.n(),
            entries: ds.m.to_rows(),
        }
    }
}

impl DoublyStochastic {
    pub fn new(m: RMatrix) -> Result<Self, BirkhoffError> {
        if !m.is_square() || m.rows() == 0 {
            return Err(BirkhoffError::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if let Some(((row, col), _)) = m.entries().find(|(_, v)| v.is_negative()) {
            return Err(BirkhoffError::NegativeEntry { row, col });
        }
        let n = m.rows();
        for row in 0..n {
            let sum: Rational = m.row(row).iter().sum();
            if !sum.is_one() {
                return Err(BirkhoffError::RowSum { row, sum });
            }
        }
        for col in 0..n {
            let sum = m.column(col).sum();
            if !sum.is_one() {
                return Err(BirkhoffError::ColumnSum { col, sum });
            }
        }
        Ok(DoublyStochastic { m })
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, BirkhoffError> {
        Self::new(RMatrix::from_rows(rows)?)
    }

    pub fn identity(n: usize) -> Result<Self, BirkhoffError> {
        Self::new(RMatrix::identity(n))
    }

    pub fn n(&self) -> usize {
        self.m.rows()
    }

    pub fn matrix(&self) -> &RMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> RMatrix {
        self.m
    }

    /// `0 < p < 1`.
    pub fn is_fractional(&self, r: usize, s: usize) -> bool {
        let v = &self.m[(r, s)];
        v.is_positive() && *v < Rational::one()
    }

    pub fn is_permutation(&self) -> bool {
        self.m.entries().all(|(_, v)| v.is_zero() || v.is_one())
    }

    /// The permutation this matrix equals, if it is a 0/1 matrix.
    pub fn as_permutation(&self) -> Option<PermutationMatrix> {
        if !self.is_permutation() {
            return None;
        }
        let sigma = (0..self.n())
            .map(|r| (0..self.n()).find(|&s| self.m[(r, s)].is_one()))
            .collect::<Option<Vec<_>>>()?;
        PermutationMatrix::new(sigma).ok()
    }
}

/// A permutation matrix stored as the map `row → column` with a 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawPerm", into = "RawPerm")]
pub struct PermutationMatrix {
    sigma: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawPerm {
    #[serde(with = "crate::one_based")]
    sigma: Vec<usize>,
}

impl TryFrom<RawPerm> for PermutationMatrix {
    type Error = BirkhoffError;

    fn try_from(raw: RawPerm) -> Result<Self, Self::Error> {
        PermutationMatrix::new(raw.sigma)
    }
}

impl From<PermutationMatrix> for RawPerm {
    fn from(p: PermutationMatrix) -> Self {
        RawPerm { sigma: p.sigma }
    }
}

impl PermutationMatrix {
    /// `sigma[r]` is the 0-based column of the 1 in row `r`.
    pub fn new(sigma: Vec<usize>) -> Result<Self, BirkhoffError> {
        let n = sigma.len();
        let mut seen = vec![false; n];
        for &s in &sigma {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(BirkhoffError::NotPermutation { n });
            }
        }
        if n == 0 {
            return Err(BirkhoffError::NotPermutation { n });
        }
        Ok(PermutationMatrix { sigma })
    }

    pub fn identity(n: usize) -> Self {
        PermutationMatrix {
            sigma: (0..n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn to_matrix(&self) -> RMatrix {
        let n = self.n();
        let mut m = RMatrix::zeros(n, n);
        for (r, &s) in self.sigma.iter().enumerate() {
            m[(r, s)] = Rational::one();
        }
        m
    }

    pub fn to_ds(&self) -> DoublyStochastic {
        DoublyStochastic {
            m: self.to_matrix(),
        }
    }

    /// `vectorize(self.to_matrix())` without building the matrix.
    pub fn vectorized(&self) -> RVector {
        let n = self.n();
        let mut v = RVector::zeros(n * n);
        for (r, &s) in self.sigma.iter().enumerate() {
            v[s * n + r] = Rational::one();
        }
        v
    }
}

/// Stacks the columns of a square matrix: entry `(r, s)` lands at `s·n + r`.
pub fn vectorize(b: &RMatrix) -> Result<RVector, BirkhoffError> {
    if !b.is_square() {
        return Err(BirkhoffError::NotSquare {
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    let n = b.rows();
    Ok((0..n * n).map(|k| b[(k % n, k / n)].clone()).collect())
}

/// Inverse of [`vectorize`].
pub fn unvectorize(v: &RVector, n: usize) -> Result<RMatrix, BirkhoffError> {
    if v.dim() != n * n {
        return Err(ExactError::DimensionMismatch {
            expected: n * n,
            found: v.dim(),
        }
        .into());
    }
    let mut m = RMatrix::zeros(n, n);
    for (k, x) in v.iter().enumerate() {
        m[(k % n, k / n)] = x.clone();
    }
    Ok(m)
}

/// The equations `E1 vec(B) = 1` (column sums) and `E2 vec(B) = 1` (row
/// sums).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsConstraintSystem {
    #[serde(rename = "E1")]
    pub e1: RMatrix,
    #[serde(rename = "E2")]
    pub e2: RMatrix,
    pub rhs: RVector,
}

impl DsConstraintSystem {
    pub fn stacked(&self) -> RMatrix {
        self.e1.vstack(&self.e2).expect("E1 and E2 have n² columns")
    }
}

pub fn build_constraints(n: usize) -> Result<DsConstraintSystem, BirkhoffError> {
    if n == 0 {
        return Err(BirkhoffError::NotSquare { rows: 0, cols: 0 });
    }
    let mut e1 = RMatrix::zeros(n, n * n);
    let mut e2 = RMatrix::zeros(n, n * n);
    for j in 0..n {
        for h in 0..n {
            e1[(j, j * n + h)] = Rational::one();
            e2[(j, h * n + j)] = Rational::one();
        }
    }
    Ok(DsConstraintSystem {
        e1,
        e2,
        rhs: RVector::ones(2 * n),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rank, rat};

    pub(super) fn halves() -> DoublyStochastic {
        DoublyStochastic::from_rows(vec![vec![rat(1, 2), rat(1, 2)], vec![rat(1, 2), rat(1, 2)]])
            .unwrap()
    }

    #[test]
    fn vectorize_is_column_stacked() {
        let v = vectorize(&RMatrix::from_i64(&[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!(v, RVector::from_i64(&[1, 3, 2, 4]));
        assert_eq!(
            vectorize(&RMatrix::identity(2)).unwrap(),
            RVector::from_i64(&[1, 0, 0, 1])
        );
        assert_eq!(
            vectorize(&RMatrix::from_i64(&[&[7]])).unwrap(),
            RVector::from_i64(&[7])
        );
        assert!(vectorize(&RMatrix::from_i64(&[&[1, 2]])).is_err());
        let m = RMatrix::from_i64(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(unvectorize(&vectorize(&m).unwrap(), 3).unwrap(), m);
    }

    #[test]
    fn constraint_layout() {
        let c = build_constraints(2).unwrap();
        assert_eq!(c.e1, RMatrix::from_i64(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]));
        assert_eq!(c.e2, RMatrix::from_i64(&[&[1, 0, 1, 0], &[0, 1, 0, 1]]));
        let c = build_constraints(1).unwrap();
        assert_eq!(c.e1, RMatrix::from_i64(&[&[1]]));
        assert_eq!(c.e2, RMatrix::from_i64(&[&[1]]));
        assert_eq!(c.rhs, RVector::from_i64(&[1, 1]));
    }

    #[test]
    fn constraints_give_column_then_row_sums() {
        let b = RMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let c = build_constraints(2).unwrap();
        let v = vectorize(&b).unwrap();
        assert_eq!(c.e1.mul_vec(&v).unwrap(), RVector::from_i64(&[4, 6]));
        assert_eq!(c.e2.mul_vec(&v).unwrap(), RVector::from_i64(&[3, 7]));
        let v = vectorize(halves().matrix()).unwrap();
        assert_eq!(c.stacked().mul_vec(&v).unwrap(), RVector::ones(4));
    }

    #[test]
    fn constraint_rank_is_2n_minus_1() {
        for n in 1..=5 {
            assert_eq!(rank(&build_constraints(n).unwrap().stacked()), 2 * n - 1);
        }
    }

    #[test]
    fn ds_validation() {
        assert!(DoublyStochastic::identity(3).is_ok());
        assert!(matches!(
            DoublyStochastic::new(RMatrix::from_i64(&[&[1, 0]])),
            Err(BirkhoffError::NotSquare { .. })
        ));
        assert!(matches!(
            DoublyStochastic::new(RMatrix::from_i64(&[&[2, -1], &[-1, 2]])),
            Err(BirkhoffError::NegativeEntry { row: 0, col: 1 })
        ));
        assert!(matches!(
            DoublyStochastic::new(RMatrix::from_i64(&[&[1, 1], &[0, 0]])),
            Err(BirkhoffError::RowSum { row: 0, .. })
        ));
        assert!(matches!(
            DoublyStochastic::new(RMatrix::zeros(0, 0)),
            Err(BirkhoffError::NotSquare { .. })
        ));
    }

    #[test]
    fn ds_json() {
        let ds = halves();
        let s = serde_json::to_string(&ds).unwrap();
        assert_eq!(s, r#"{"n":2,"entries":[["1/2","1/2"],["1/2","1/2"]]}"#);
        assert_eq!(serde_json::from_str::<DoublyStochastic>(&s).unwrap(), ds);
        let bad = r#"{"n":2,"entries":[[1,0],[1,0]]}"#;
        assert!(serde_json::from_str::<DoublyStochastic>(bad).is_err());
        let bad = r#"{"n":3,"entries":[[1,0],[0,1]]}"#;
        assert!(serde_json::from_str::<DoublyStochastic>(bad).is_err());
    }

    #[test]
    fn permutation_matrix() {
        let p = PermutationMatrix::new(vec![1, 2, 0]).unwrap();
        assert_eq!(
            p.to_matrix(),
            RMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])
        );
        assert_eq!(p.vectorized(), vectorize(&p.to_matrix()).unwrap());
        assert_eq!(p.to_ds().as_permutation(), Some(p.clone()));
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"{"sigma":[2,3,1]}"#);
        assert!(PermutationMatrix::new(vec![0, 0]).is_err());
        assert!(PermutationMatrix::new(vec![]).is_err());
        assert!(serde_json::from_str::<PermutationMatrix>(r#"{"sigma":[1,1]}"#).is_err());
        assert!(halves().as_permutation().is_none());
    }
}
