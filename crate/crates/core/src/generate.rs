//! Seeded instance generators. The same seed and sizes always give the
//! same instance, on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::birkhoff::{BirkhoffError, DoublyStochastic, PermutationMatrix};
use crate::exact::{RMatrix, RVector, Rational};
use crate::lp::{LpError, LpProblem};

/// Upper limit on every size parameter.
pub const MAX_GENERATED_DIM: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("{name} = {value} is outside 1..={max}")]
    Size {
        name: &'static str,
        value: usize,
        max: usize,
    },
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Birkhoff(#[from] BirkhoffError),
}

fn check_size(name: &'static str, value: usize) -> Result<(), GenerateError> {
    if value == 0 || value > MAX_GENERATED_DIM {
        return Err(GenerateError::Size {
            name,
            value,
            max: MAX_GENERATED_DIM,
        });
    }
    Ok(())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational `k/d` with `k ∈ [lo, hi]`, `d ∈ 1..=4`.
pub fn small_rational(rng: &mut impl Rng, lo: i64, hi: i64) -> Rational {
    Rational::new(rng.gen_range(lo..=hi), rng.gen_range(1..=4))
}

/// A random vector with small rational entries, not all zero.
pub fn random_direction(rng: &mut impl Rng, n: usize) -> RVector {
    loop {
        let v: RVector = (0..n).map(|_| small_rational(rng, -4, 4)).collect();
        if !v.is_zero() || n == 0 {
            return v;
        }
    }
}

/// A feasible problem together with the point that makes it feasible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratedLp {
    #[serde(flatten)]
    pub problem: LpProblem,
    pub x0: RVector,
}

/// Integer `A` and `p` in `[-5, 5]`, a sparse nonnegative `x0`, and
/// `b = A x0`. With `bounded`, the first row of `A` is strictly positive,
/// which caps every feasible coordinate.
pub fn random_lp(
    seed: u64,
    m: usize,
    n: usize,
    bounded: bool,
) -> Result<GeneratedLp, GenerateError> {
    check_size("m", m)?;
    check_size("n", n)?;
    let mut rng = rng(seed);
    let rows: Vec<Vec<Rational>> = (0..m)
        .map(|i| {
            (0..n)
                .map(|_| {
                    let lo = if bounded && i == 0 { 1 } else { -5 };
                    Rational::from_integer(rng.gen_range(lo..=5))
                })
                .collect()
        })
        .collect();
    let a = RMatrix::from_rows_with_cols(rows, n).map_err(LpError::from)?;
    let x0: RVector = (0..n)
        .map(|_| {
            if rng.gen_bool(0.4) {
                Rational::zero()
            } else {
                small_rational(&mut rng, 1, 6)
            }
        })
        .collect();
    let b = a.mul_vec(&x0).map_err(LpError::from)?;
    let p: RVector = (0..n)
        .map(|_| Rational::from_integer(rng.gen_range(-5..=5)))
        .collect();
    Ok(GeneratedLp {
        problem: LpProblem::new(a, b, p)?,
        x0,
    })
}

/// A convex combination of one to `n + 1` random permutation matrices with
/// random positive integer weights, normalized.
pub fn random_ds(seed: u64, n: usize) -> Result<DoublyStochastic, GenerateError> {
    check_size("n", n)?;
    let mut rng = rng(seed);
    let k = rng.gen_range(1..=n + 1);
    let mut terms = Vec::with_capacity(k);
    for _ in 0..k {
        let mut sigma: Vec<usize> = (0..n).collect();
        sigma.shuffle(&mut rng);
        terms.push((rng.gen_range(1..=9i64), PermutationMatrix::new(sigma)?));
    }
    let total: i64 = terms.iter().map(|(w, _)| w).sum();
    let mut m = RMatrix::zeros(n, n);
    for (w, perm) in &terms {
        let w = Rational::new(*w, total);
        for (r, &s) in perm.sigma().iter().enumerate() {
            m[(r, s)] += &w;
        }
    }
    Ok(DoublyStochastic::new(m)?)
}

/// Like [`random_ds`] but never a permutation matrix.
pub fn random_fractional_ds(seed: u64, n: usize) -> Result<DoublyStochastic, GenerateError> {
    check_size("n", n)?;
    if n == 1 {
        return Err(GenerateError::Size {
            name: "n",
            value: 1,
            max: MAX_GENERATED_DIM,
        });
    }
    let mut attempt = seed;
    loop {
        let ds = random_ds(attempt, n)?;
        if !ds.is_permutation() {
            return Ok(ds);
        }
        attempt = attempt.wrapping_add(0x9E37_79B9_7F4A_7C15);
    }
}
