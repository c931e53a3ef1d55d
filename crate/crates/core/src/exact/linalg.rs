//! Elimination-based exact linear algebra.
//!
//! Everything here goes through one reduced-row-echelon routine whose pivot
//! rule is fixed: columns are scanned left to right and the first row (from
//! the top of the unreduced block) holding a nonzero entry becomes the pivot
//! row. Results are therefore reproducible bit for bit.

use super::{ExactError, RMatrix, RVector, Rational};

/// Reduced row echelon form of a matrix, with the pivot column of each
/// nonzero row.
#[derive(Debug, Clone)]
pub struct Rref {
    pub matrix: RMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Row-reduces `m`. If `augment_cols` > 0, the trailing columns are carried
/// along but never chosen as pivots.
fn rref_impl(m: &RMatrix, augment_cols: usize) -> Rref {
    let mut a = m.clone();
    let rows = a.rows();
    let pivot_limit = a.cols() - augment_cols;
    let total_cols = a.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_limit {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..total_cols {
                let tmp = a[(p, j)].clone();
                a[(p, j)] = a[(r, j)].clone();
                a[(r, j)] = tmp;
            }
        }
        let inv = a[(r, c)].recip();
        for j in c..total_cols {
            if !a[(r, j)].is_zero() {
                a[(r, j)] = &a[(r, j)] * &inv;
            }
        }
        for i in 0..rows {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let factor = a[(i, c)].clone();
            for j in c..total_cols {
                if a[(r, j)].is_zero() {
                    continue;
                }
                let delta = &factor * &a[(r, j)];
                a[(i, j)] -= &delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { matrix: a, pivots }
}

pub fn rref(m: &RMatrix) -> Rref {
    rref_impl(m, 0)
}

pub fn rank(m: &RMatrix) -> usize {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    rref(m).rank()
}

/// Whether the listed columns of `m` are linearly independent. The empty
/// selection is independent.
pub fn columns_independent(m: &RMatrix, idx: &[usize]) -> Result<bool, ExactError> {
    if let Some(&bad) = idx.iter().find(|&&j| j >= m.cols()) {
        return Err(ExactError::IndexOutOfRange {
            index: bad,
            bound: m.cols(),
        });
    }
    if idx.is_empty() {
        return Ok(true);
    }
    if idx.len() > m.rows() {
        return Ok(false);
    }
    Ok(rank(&m.select_columns(idx)) == idx.len())
}

/// One exact solution of `m z = rhs`, or `None` when the system is
/// inconsistent. Free variables are set to zero.
pub fn solve_exact(m: &RMatrix, rhs: &RVector) -> Result<Option<RVector>, ExactError> {
    if rhs.dim() != m.rows() {
        return Err(ExactError::DimensionMismatch {
            expected: m.rows(),
            found: rhs.dim(),
        });
    }
    let n = m.cols();
    let mut aug = RMatrix::zeros(m.rows(), n + 1);
    for i in 0..m.rows() {
        for j in 0..n {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, n)] = rhs[i].clone();
    }
    let red = rref_impl(&aug, 1);
    let rank = red.rank();
    if (rank..m.rows()).any(|i| !red.matrix[(i, n)].is_zero()) {
        return Ok(None);
    }
    let mut z = RVector::zeros(n);
    for (r, &c) in red.pivots.iter().enumerate() {
        z[c] = red.matrix[(r, n)].clone();
    }
    Ok(Some(z))
}

/// The solution of `m z = rhs` when it exists and is unique, i.e. the system
/// is consistent and the columns of `m` are independent.
pub fn solve_unique(m: &RMatrix, rhs: &RVector) -> Result<Option<RVector>, ExactError> {
    if m.cols() > m.rows() {
        return Ok(None);
    }
    match solve_exact(m, rhs)? {
        Some(z) if rank(m) == m.cols() => Ok(Some(z)),
        _ => Ok(None),
    }
}

/// A basis of `{z | m z = 0}` with `cols - rank` vectors, one per free column.
/// Each basis vector has a 1 at its free column.
pub fn null_space_basis(m: &RMatrix) -> Vec<RVector> {
    let n = m.cols();
    if m.rows() == 0 {
        return (0..n).map(|j| RVector::unit(n, j)).collect();
    }
    let red = rref(m);
    let mut is_pivot = vec![false; n];
    for &c in &red.pivots {
        is_pivot[c] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = RVector::zeros(n);
            v[f] = Rational::one();
            for (r, &c) in red.pivots.iter().enumerate() {
                v[c] = -&red.matrix[(r, f)];
            }
            v
        })
        .collect()
}
