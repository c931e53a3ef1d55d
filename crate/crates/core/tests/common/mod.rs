//! Test-only reference implementations, written against `BigRational`
//! directly so they share no code with the library's elimination or
//! enumeration.

#![allow(dead_code)]

use std::collections::BTreeSet;

use lpcert::exact::{RMatrix, RVector, Rational};
use lpcert::generate::{random_lp, rng, small_rational};
use lpcert::lp::{solve, LpProblem, SolveOutcome};
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

pub type Q = BigRational;

pub fn to_q(r: &Rational) -> Q {
    r.as_big().clone()
}

pub fn from_q(q: &Q) -> Rational {
    Rational::from(q.clone())
}

/// Solves `M z = rhs` by Gauss–Jordan elimination, returning `None` unless
/// the solution exists and is unique.
pub fn unique_solution(mut m: Vec<Vec<Q>>, mut rhs: Vec<Q>, cols: usize) -> Option<Vec<Q>> {
    let rows = m.len();
    let mut pivot_row = 0;
    let mut pivot_of_col = vec![usize::MAX; cols];
    for c in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !m[r][c].is_zero()) else {
            return None;
        };
        m.swap(pivot_row, p);
        rhs.swap(pivot_row, p);
        let inv = m[pivot_row][c].recip();
        for k in 0..cols {
            m[pivot_row][k] = &m[pivot_row][k] * &inv;
        }
        rhs[pivot_row] = &rhs[pivot_row] * &inv;
        for r in 0..rows {
            if r != pivot_row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for k in 0..cols {
                    let d = &f * &m[pivot_row][k];
                    m[r][k] -= d;
                }
                let d = &f * &rhs[pivot_row];
                rhs[r] -= d;
            }
        }
        pivot_of_col[c] = pivot_row;
        pivot_row += 1;
    }
    if rhs[pivot_row..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(pivot_of_col.iter().map(|&r| rhs[r].clone()).collect())
}

/// Whether the columns in `subset` are linearly independent.
pub fn independent(a: &RMatrix, subset: &[usize]) -> bool {
    let rows: Vec<Vec<Q>> = (0..a.rows())
        .map(|i| subset.iter().map(|&j| to_q(&a[(i, j)])).collect())
        .collect();
    // Independence is unique solvability of M z = 0.
    unique_solution(rows, vec![Q::zero(); a.rows()], subset.len()).is_some()
}

pub struct OracleVertices {
    pub points: BTreeSet<Vec<Q>>,
    pub independent_subsets: usize,
}

/// Basic feasible solutions by trying every column subset (as a bitmask),
/// regardless of size.
pub fn oracle_vertices(a: &RMatrix, b: &RVector) -> OracleVertices {
    let n = a.cols();
    assert!(n <= 16, "oracle is exponential");
    let bq: Vec<Q> = b.iter().map(to_q).collect();
    let mut points = BTreeSet::new();
    let mut independent_subsets = 0;
    for mask in 0u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|j| mask >> j & 1 == 1).collect();
        if !independent(a, &subset) {
            continue;
        }
        independent_subsets += 1;
        let rows: Vec<Vec<Q>> = (0..a.rows())
            .map(|i| subset.iter().map(|&j| to_q(&a[(i, j)])).collect())
            .collect();
        let Some(z) = unique_solution(rows, bq.clone(), subset.len()) else {
            continue;
        };
        if z.iter().any(|v| v.is_negative()) {
            continue;
        }
        let mut x = vec![Q::zero(); n];
        for (&j, v) in subset.iter().zip(z) {
            x[j] = v;
        }
        points.insert(x);
    }
    OracleVertices {
        points,
        independent_subsets,
    }
}

pub fn to_rvector(x: &[Q]) -> RVector {
    x.iter().map(from_q).collect()
}

pub fn dot_q(p: &RVector, x: &[Q]) -> Q {
    p.iter().zip(x).map(|(a, b)| to_q(a) * b).sum()
}

/// Basic optimal solutions: the enumerated vertices attaining `value`.
pub fn oracle_optimal_vertices(prob: &LpProblem, value: &Rational) -> Vec<RVector> {
    let target = to_q(value);
    oracle_vertices(prob.a(), prob.b())
        .points
        .iter()
        .filter(|x| dot_q(prob.p(), x) == target)
        .map(|x| to_rvector(x))
        .collect()
}

/// Reference uniqueness verdict for an optimum `xbar` of value `opt`:
/// unique iff there is one basic optimum, the support columns of `xbar`
/// are independent, and no optimal point is positive off the support.
pub fn oracle_unique(prob: &LpProblem, xbar: &RVector, opt: &Rational) -> bool {
    if oracle_optimal_vertices(prob, opt).len() != 1 {
        return false;
    }
    if !independent(prob.a(), &xbar.support()) {
        return false;
    }
    let zeros = xbar.zero_indices();
    if zeros.is_empty() {
        return true;
    }
    // max Σ_{j ∈ I⁰} x_j over {A x = b, p·x = opt, x ≥ 0}.
    let mut rows = prob.a().to_rows();
    rows.push(prob.p().entries().to_vec());
    let mut rhs = prob.b().entries().to_vec();
    rhs.push(opt.clone());
    let c: RVector = (0..prob.n())
        .map(|j| {
            if zeros.contains(&j) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect();
    let face = LpProblem::new(
        RMatrix::from_rows_with_cols(rows, prob.n()).unwrap(),
        RVector::new(rhs),
        c,
    )
    .unwrap();
    match solve(&face) {
        SolveOutcome::Optimal { primal, .. } => primal.value.is_zero(),
        SolveOutcome::Unbounded { .. } => false,
        SolveOutcome::Infeasible { .. } => panic!("optimal face is empty"),
    }
}

/// An instance with a known optimum.
#[derive(Clone)]
pub struct Solved {
    pub seed: u64,
    pub prob: LpProblem,
    pub x: RVector,
    pub y: RVector,
    pub value: Rational,
}

/// Random problem for `seed`. Every third seed gets an objective of the
/// form `Aᵀu − c` with `c ≥ 0` zero on a random set of columns, which makes
/// whole faces optimal and so exercises non-unique optima.
pub fn random_problem(seed: u64, bounded: bool) -> LpProblem {
    let mut r = rng(seed ^ 0xA5A5_5A5A);
    let m = r.gen_range(1..=3);
    let n = r.gen_range(m.max(2)..=6);
    let g = random_lp(seed, m, n, bounded).unwrap();
    if seed % 3 != 2 {
        return g.problem;
    }
    let u: RVector = (0..m).map(|_| small_rational(&mut r, -3, 3)).collect();
    let at_u = g.problem.a().left_mul_vec(&u).unwrap();
    let p: RVector = at_u
        .iter()
        .map(|v| {
            if r.gen_bool(0.5) {
                v.clone()
            } else {
                v - &Rational::from(r.gen_range(1..=3i64))
            }
        })
        .collect();
    g.problem.with_objective(p).unwrap()
}

/// The first `count` seeds from `start` whose problem has an optimum.
pub fn solved_instances(start: u64, count: usize, bounded: bool) -> Vec<Solved> {
    let mut out = Vec::with_capacity(count);
    let mut seed = start;
    while out.len() < count {
        let prob = random_problem(seed, bounded);
        if let SolveOutcome::Optimal { primal, dual } = solve(&prob) {
            out.push(Solved {
                seed,
                prob,
                x: primal.x,
                y: dual.y,
                value: primal.value,
            });
        }
        seed += 1;
    }
    out
}

/// Random convex weights over `k` items (some may be zero, not all).
pub fn random_weights(r: &mut impl Rng, k: usize) -> Vec<Rational> {
    loop {
        let raw: Vec<i64> = (0..k).map(|_| r.gen_range(0..=6)).collect();
        let total: i64 = raw.iter().sum();
        if total > 0 {
            return raw.into_iter().map(|w| Rational::new(w, total)).collect();
        }
    }
}

pub fn combine(weights: &[Rational], points: &[RVector]) -> RVector {
    let mut acc = RVector::zeros(points[0].dim());
    for (w, p) in weights.iter().zip(points) {
        acc = acc.axpy(w, p).unwrap();
    }
    acc
}
