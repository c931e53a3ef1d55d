//! Dense two-phase tableau simplex over exact rationals.
//!
//! Phase 1 appends one artificial column per row (after flipping rows so the
//! right-hand side is nonnegative) and maximizes minus their sum. Phase 2
//! maximizes `p·x` from the resulting basis. Both phases use Bland's rule:
//! the entering column is the lowest-indexed one with positive reduced cost,
//! and ratio-test ties go to the lowest-indexed basic variable.
//!
//! The artificial block of the tableau is `B⁻¹`, which is where the dual
//! solution and the Farkas witness are read from.

use super::{DualSolution, LpProblem, PrimalSolution, SolveOutcome};
use crate::exact::{RVector, Rational};

struct Tableau {
    n: usize,
    /// Row-sign-normalized constraint matrix, kept for reduced costs.
    a: Vec<Vec<Rational>>,
    /// `B⁻¹ [A | I]`, one row per constraint, width `n + m`.
    t: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    flipped: Vec<bool>,
}

enum PhaseEnd {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn new(prob: &LpProblem) -> Self {
        let m = prob.m();
        let n = prob.n();
        let mut a = Vec::with_capacity(m);
        let mut t = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        for i in 0..m {
            let flip = prob.b()[i].is_negative();
            let row: Vec<Rational> = prob
                .a()
                .row(i)
                .iter()
                .map(|v| if flip { -v } else { v.clone() })
                .collect();
            let mut trow = row.clone();
            trow.extend((0..m).map(|k| {
                if k == i {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            a.push(row);
            t.push(trow);
            rhs.push(prob.b()[i].abs());
            flipped.push(flip);
        }
        Tableau {
            n,
            a,
            t,
            rhs,
            basis: (n..n + m).collect(),
            flipped,
        }
    }

    fn m(&self) -> usize {
        self.t.len()
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for v in self.t[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        self.rhs[r] = &self.rhs[r] * &inv;
        let pivot_row = self.t[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.m() {
            if i == r || self.t[i][c].is_zero() {
                continue;
            }
            let factor = self.t[i][c].clone();
            for (v, pv) in self.t[i].iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v -= &(&factor * pv);
                }
            }
            if !pivot_rhs.is_zero() {
                self.rhs[i] -= &(&factor * &pivot_rhs);
            }
        }
        self.basis[r] = c;
    }

    /// `c_Bᵀ B⁻¹` in the sign-normalized row space.
    fn simplex_multipliers(&self, cost: impl Fn(usize) -> Rational) -> Vec<Rational> {
        let m = self.m();
        let mut y = vec![Rational::zero(); m];
        for (i, &bj) in self.basis.iter().enumerate() {
            let cb = cost(bj);
            if cb.is_zero() {
                continue;
            }
            for (k, yk) in y.iter_mut().enumerate() {
                let v = &self.t[i][self.n + k];
                if !v.is_zero() {
                    *yk += &(&cb * v);
                }
            }
        }
        y
    }

    /// Runs Bland's-rule pivots over the original columns until optimal or
    /// an improving column has no positive entry.
    fn run_phase(&mut self, cost: &dyn Fn(usize) -> Rational) -> PhaseEnd {
        loop {
            let y = self.simplex_multipliers(cost);
            let entering = (0..self.n).find(|&j| {
                let mut d = cost(j);
                for (k, yk) in y.iter().enumerate() {
                    let a = &self.a[k][j];
                    if !a.is_zero() && !yk.is_zero() {
                        d -= &(yk * a);
                    }
                }
                d.is_positive()
            });
            let Some(e) = entering else {
                return PhaseEnd::Optimal;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for i in 0..self.m() {
                let coef = &self.t[i][e];
                if !coef.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / coef;
                let better = match &leave {
                    None => true,
                    Some((li, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, e),
                None => return PhaseEnd::Unbounded(e),
            }
        }
    }

    fn unflip(&self, y: Vec<Rational>) -> RVector {
        y.into_iter()
            .zip(&self.flipped)
            .map(|(v, &f)| if f { -v } else { v })
            .collect()
    }

    fn primal(&self) -> RVector {
        let mut x = RVector::zeros(self.n);
        for (i, &bj) in self.basis.iter().enumerate() {
            if bj < self.n {
                x[bj] = self.rhs[i].clone();
            }
        }
        x
    }
}

/// Solves `max p·x, A x = b, x ≥ 0` exactly.
///
/// Every returned outcome has already passed [`SolveOutcome::certify`];
/// a failure there is a solver bug and panics.
pub fn solve(prob: &LpProblem) -> SolveOutcome {
    let outcome = solve_uncertified(prob);
    if let Err(e) = outcome.certify(prob) {
        panic!("simplex produced an invalid certificate: {e}");
    }
    outcome
}

fn solve_uncertified(prob: &LpProblem) -> SolveOutcome {
    let n = prob.n();
    let mut tab = Tableau::new(prob);

    let phase1_cost = |j: usize| {
        if j >= n {
            -Rational::one()
        } else {
            Rational::zero()
        }
    };
    // Phase 1 is bounded above by zero, so it always ends optimal.
    let _ = tab.run_phase(&phase1_cost);
    let infeasibility: Rational = tab
        .basis
        .iter()
        .zip(&tab.rhs)
        .filter(|(&bj, _)| bj >= n)
        .map(|(_, v)| v.clone())
        .sum();
    if infeasibility.is_positive() {
        let y = tab.simplex_multipliers(phase1_cost);
        let witness = tab.unflip(y.into_iter().map(|v| -v).collect());
        return SolveOutcome::Infeasible { witness };
    }

    // Drive zero-level artificials out of the basis where a real column can
    // replace them; rows where none can are redundant and stay put.
    for r in 0..tab.m() {
        if tab.basis[r] < n {
            continue;
        }
        if let Some(c) = (0..n).find(|&j| !tab.t[r][j].is_zero()) {
            tab.pivot(r, c);
        }
    }

    let p = prob.p();
    let phase2_cost = |j: usize| {
        if j < n {
            p[j].clone()
        } else {
            Rational::zero()
        }
    };
    match tab.run_phase(&phase2_cost) {
        PhaseEnd::Unbounded(e) => {
            let mut ray = RVector::zeros(n);
            ray[e] = Rational::one();
            for (i, &bj) in tab.basis.iter().enumerate() {
                if bj < n {
                    ray[bj] = -&tab.t[i][e];
                }
            }
            SolveOutcome::Unbounded { ray }
        }
        PhaseEnd::Optimal => {
            let x = tab.primal();
            let value = p.dot_unchecked(&x);
            let y = tab.unflip(tab.simplex_multipliers(phase2_cost));
            SolveOutcome::Optimal {
                primal: PrimalSolution { x, value },
                dual: DualSolution { y },
            }
        }
    }
}
