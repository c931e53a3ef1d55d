use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{BirkhoffError, DoublyStochastic};
use crate::exact::Rational;

/// A closed walk over fractional cells that alternates a step along a row
/// with a step along a column. `pairs[0]` and `pairs[1]` share a row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FractionalCycle {
    #[serde(with = "crate::one_based::pairs")]
    pub pairs: Vec<(usize, usize)>,
}

impl FractionalCycle {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn validate(&self, p: &DoublyStochastic) -> Result<(), BirkhoffError> {
        let bad = |msg: String| Err(BirkhoffError::InvalidCycle(msg));
        let k = self.pairs.len();
        if k < 4 || k % 2 == 1 {
            return bad(format!("length {k} is not even and at least 4"));
        }
        let n = p.n();
        let mut seen = std::collections::HashSet::new();
        for (i, &(r, s)) in self.pairs.iter().enumerate() {
            if r >= n || s >= n {
                return bad(format!("cell ({}, {}) is outside the matrix", r + 1, s + 1));
            }
            if !seen.insert((r, s)) {
                return bad(format!("cell ({}, {}) repeats", r + 1, s + 1));
            }
            if !p.is_fractional(r, s) {
                return bad(format!(
                    "entry ({}, {}) is not strictly between 0 and 1",
                    r + 1,
                    s + 1
                ));
            }
            let (r2, s2) = self.pairs[(i + 1) % k];
            let step_ok = if i % 2 == 0 { r == r2 } else { s == s2 };
            if !step_ok {
                let along = if i % 2 == 0 { "row" } else { "column" };
                return bad(format!("step {} does not move along a {along}", i + 1));
            }
        }
        Ok(())
    }
}

/// Walks from the first fractional cell (row-major), stepping along its row
/// to the first other fractional cell, then along that column, and so on,
/// always taking the first candidate in scan order. The walk stops when a
/// cell recurs and keeps only the loop it closed.
///
/// Every fractional cell has another fractional cell in its row and in its
/// column (sums are exactly 1), so the walk never gets stuck.
pub fn find_fractional_cycle(p: &DoublyStochastic) -> Result<FractionalCycle, BirkhoffError> {
    let mut pairs = closed_walk(p)?;
    if pairs.len() % 2 == 1 {
        // The closing step and the first step run along the same line, so
        // the repeated cell sits in the middle of a straight run; skip it.
        pairs.remove(0);
    }
    if pairs[0].0 != pairs[1].0 {
        pairs.rotate_left(1);
    }
    let cycle = FractionalCycle { pairs };
    cycle.validate(p)?;
    Ok(cycle)
}

/// The loop closed by the walk, starting at the cell that recurred.
fn closed_walk(p: &DoublyStochastic) -> Result<Vec<(usize, usize)>, BirkhoffError> {
    let n = p.n();
    let start = (0..n)
        .flat_map(|r| (0..n).map(move |s| (r, s)))
        .find(|&(r, s)| p.is_fractional(r, s))
        .ok_or(BirkhoffError::NoFractionalEntry)?;

    let mut walk = vec![start];
    let mut index = HashMap::from([(start, 0usize)]);
    let loop_start = loop {
        let &(r, s) = walk.last().expect("walk is never empty");
        let along_row = walk.len() % 2 == 1;
        let next = if along_row {
            (0..n)
                .find(|&t| t != s && p.is_fractional(r, t))
                .map(|t| (r, t))
        } else {
            (0..n)
                .find(|&t| t != r && p.is_fractional(t, s))
                .map(|t| (t, s))
        }
        .ok_or_else(|| BirkhoffError::Internal(format!("walk stuck at ({}, {})", r + 1, s + 1)))?;
        if let Some(&i) = index.get(&next) {
            break i;
        }
        index.insert(next, walk.len());
        walk.push(next);
    };

    Ok(walk.split_off(loop_start))
}

/// `min(p, 1 − p)` over the cells of the cycle.
pub fn epsilon0(p: &DoublyStochastic, cyc: &FractionalCycle) -> Result<Rational, BirkhoffError> {
    cyc.validate(p)?;
    let one = Rational::one();
    cyc.pairs
        .iter()
        .map(|&(r, s)| {
            let v = &p.matrix()[(r, s)];
            std::cmp::min(v.clone(), &one - v)
        })
        .min()
        .ok_or_else(|| BirkhoffError::InvalidCycle("empty".into()))
}

/// Splits `P` into two distinct doubly stochastic matrices whose average is
/// `P`: the first subtracts `eps` at cycle positions 1, 3, 5, … and adds it
/// at 2, 4, 6, …; the second does the opposite.
pub fn perturb_pair(
    p: &DoublyStochastic,
    cyc: &FractionalCycle,
    eps: &Rational,
) -> Result<(DoublyStochastic, DoublyStochastic), BirkhoffError> {
    let e0 = epsilon0(p, cyc)?;
    if !eps.is_positive() || *eps >= e0 {
        return Err(BirkhoffError::EpsilonOutOfRange {
            eps: eps.clone(),
            epsilon0: e0,
        });
    }
    let mut q1 = p.matrix().clone();
    let mut q2 = p.matrix().clone();
    for (i, &(r, s)) in cyc.pairs.iter().enumerate() {
        if i % 2 == 0 {
            q1[(r, s)] -= eps;
            q2[(r, s)] += eps;
        } else {
            q1[(r, s)] += eps;
            q2[(r, s)] -= eps;
        }
    }
    Ok((DoublyStochastic::new(q1)?, DoublyStochastic::new(q2)?))
}
