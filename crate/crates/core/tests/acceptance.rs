//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Every comparison is exact; each
//! criterion also has a wall-clock limit.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use common::{
    combine, oracle_optimal_vertices, oracle_unique, oracle_vertices, random_weights,
    solved_instances, Solved,
};
use lpcert::birkhoff::{
    bvn_decompose, check_vertex_set, epsilon0, find_fractional_cycle, perturb_pair,
};
use lpcert::exact::{RMatrix, RVector, Rational};
use lpcert::generate::{random_direction, random_ds, random_fractional_ds, random_lp, rng};
use lpcert::lp::{
    complementary_slackness_check, farkas_separate, solve, FarkasVerdict, LpProblem, SolveOutcome,
};
use lpcert::par::{self, Execution};
use lpcert::theorems::{
    check_witness, decide_unique, nonsub_verify, optimal_face_decompose, perturbation_holds,
    TheoremError, UniquenessVerdict,
};
use lpcert::vertex::{enumerate_basic, is_bounded, Boundedness};
use rand::Rng;

static OUTCOMES_CHECKED: AtomicUsize = AtomicUsize::new(0);
static OUTCOME_FAILURES: AtomicUsize = AtomicUsize::new(0);

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Solves and re-checks the outcome: the certificate invariants, and
/// complementary slackness on optimal outcomes.
fn checked_solve(prob: &LpProblem) -> SolveOutcome {
    let out = solve(prob);
    let mut ok = out.certify(prob).is_ok();
    if let SolveOutcome::Optimal { primal, dual } = &out {
        ok &= complementary_slackness_check(prob, &primal.x, &dual.y) == Ok(true);
    }
    OUTCOMES_CHECKED.fetch_add(1, Ordering::Relaxed);
    if !ok {
        OUTCOME_FAILURES.fetch_add(1, Ordering::Relaxed);
    }
    out
}

/// Runs `f` over `items` in parallel and returns the first failure.
fn all_ok<T: Sync>(
    items: &[T],
    f: impl Fn(&T) -> Result<(), String> + Sync + Send,
) -> Result<(), String> {
    par::map(items, Execution::Parallel, f)
        .into_iter()
        .collect()
}

fn worked_example() -> Check {
    let prob = LpProblem::new(
        RMatrix::from_i64(&[&[1, 0]]),
        RVector::from_i64(&[1]),
        RVector::from_i64(&[1, 0]),
    )
    .unwrap();
    let xstar = enumerate_basic(prob.a(), prob.b()).map_err(|e| e.to_string())?;
    ensure!(
        xstar.points() == vec![RVector::from_i64(&[1, 0])],
        "X* = {:?}",
        xstar.points()
    );

    let ray = RVector::from_i64(&[0, 1]);
    let b = is_bounded(prob.a(), prob.b()).map_err(|e| e.to_string())?;
    ensure!(
        b == Boundedness::UnboundedRay { ray: ray.clone() },
        "boundedness {b:?}"
    );

    let y = RVector::from_i64(&[1, 1]);
    let value = checked_solve(&prob).optimal_value().cloned();
    ensure!(prob.is_feasible(&y).unwrap(), "y infeasible");
    ensure!(
        value == Some(prob.objective(&y).unwrap()),
        "y not optimal: optimum {value:?}"
    );

    let err = optimal_face_decompose(&prob, &y);
    ensure!(
        err == Err(TheoremError::UnboundedFeasibleSet { ray }),
        "face decomposition gave {err:?}"
    );

    // Y* = X* here, and y lies outside its hull.
    let sep = farkas_separate(&y, &xstar.points()).map_err(|e| e.to_string())?;
    ensure!(
        matches!(sep, FarkasVerdict::Separator { .. }),
        "y was written as a hull point"
    );
    Ok("X* = {(1,0)}, ray (0,1), y = (1,1) optimal but rejected".into())
}

fn face_suite() -> Check {
    let instances = solved_instances(10_000, 200, true);
    all_ok(&instances, |s| {
        let out = checked_solve(&s.prob);
        let opt = out
            .optimal_value()
            .ok_or("bounded instance without optimum")?;
        let xstar = oracle_vertices(s.prob.a(), s.prob.b());
        let best = xstar
            .points
            .iter()
            .map(|x| common::dot_q(s.prob.p(), x))
            .max()
            .unwrap();
        ensure!(
            &common::from_q(&best) == opt,
            "seed {}: max over X* {} vs simplex {}",
            s.seed,
            common::from_q(&best),
            opt
        );

        let ystar = oracle_optimal_vertices(&s.prob, opt);
        let mut r = rng(s.seed);
        for _ in 0..5 {
            let y = combine(&random_weights(&mut r, ystar.len()), &ystar);
            let d =
                optimal_face_decompose(&s.prob, &y).map_err(|e| format!("seed {}: {e}", s.seed))?;
            ensure!(
                d.weights.iter().all(|w| !w.is_negative()),
                "seed {}: negative weight",
                s.seed
            );
            ensure!(
                d.weights.iter().sum::<Rational>().is_one(),
                "seed {}: weights do not sum to 1",
                s.seed
            );
            ensure!(
                d.reconstruct() == y,
                "seed {}: reconstruction differs",
                s.seed
            );
            ensure!(
                d.vertices.points() == ystar,
                "seed {}: Y* differs from oracle",
                s.seed
            );
        }
        Ok(())
    })?;
    Ok("200 instances x 5 points reconstructed; max over X* = simplex optimum".into())
}

struct UniquenessCase {
    solved: Solved,
    verdict: UniquenessVerdict,
}

fn uniqueness_cases() -> Vec<UniquenessCase> {
    let instances = solved_instances(20_000, 200, false);
    par::map(&instances, Execution::Parallel, |s| UniquenessCase {
        solved: s.clone(),
        verdict: decide_unique(&s.prob, &s.x).expect("solver optimum is optimal"),
    })
}

fn uniqueness_suite(cases: &[UniquenessCase]) -> Check {
    all_ok(cases, |c| {
        let s = &c.solved;
        checked_solve(&s.prob);
        let want = oracle_unique(&s.prob, &s.x, &s.value);
        ensure!(
            c.verdict.is_unique() == want,
            "seed {}: verdict {:?}, oracle unique = {want}",
            s.seed,
            c.verdict
        );
        if let Some(h) = c.verdict.witness() {
            ensure!(
                check_witness(&s.prob, &s.x, h).unwrap(),
                "seed {}: witness fails",
                s.seed
            );
        }
        Ok(())
    })?;
    let unique = cases.iter().filter(|c| c.verdict.is_unique()).count();
    Ok(format!(
        "200/200 agree with oracle ({unique} unique, {} not unique)",
        cases.len() - unique
    ))
}

fn perturbation_suite(cases: &[UniquenessCase]) -> Check {
    let smallest = Rational::new(1, 1 << 10);
    all_ok(cases, |c| {
        let s = &c.solved;
        match c.verdict.witness() {
            None => {
                let mut r = rng(s.seed ^ 0x51);
                for k in 0..20 {
                    let q = random_direction(&mut r, s.prob.n());
                    let mut eps = Rational::one();
                    let found = loop {
                        let delta = &eps / &Rational::from(2);
                        let v = perturbation_holds(&s.prob, &s.x, &q, &delta)
                            .map_err(|e| e.to_string())?;
                        if v.holds() {
                            break true;
                        }
                        if eps <= smallest {
                            break false;
                        }
                        eps = delta;
                    };
                    ensure!(
                        found,
                        "seed {} direction {k} q = {q}: no ε ≥ 2^-10 keeps x̄ optimal",
                        s.seed
                    );
                }
            }
            Some(h) => {
                for delta in [
                    Rational::new(1, 2),
                    Rational::new(1, 4),
                    Rational::new(1, 8),
                ] {
                    let v =
                        perturbation_holds(&s.prob, &s.x, h, &delta).map_err(|e| e.to_string())?;
                    ensure!(
                        !v.holds(),
                        "seed {}: witness direction does not beat x̄ at δ = {delta}",
                        s.seed
                    );
                }
            }
        }
        Ok(())
    })?;
    Ok("unique: 20 directions each admit ε; not unique: witness falsifies at 1/2, 1/4, 1/8".into())
}

fn nonsub_suite() -> Check {
    let instances = solved_instances(30_000, 100, false);
    all_ok(&instances, |s| {
        let mut r = rng(s.seed ^ 0x77);
        for _ in 0..3 {
            let xstar: RVector =
                s.x.iter()
                    .map(|v| {
                        if v.is_positive() && r.gen_bool(0.8) {
                            Rational::new(r.gen_range(0..=9), r.gen_range(1..=5))
                        } else {
                            Rational::zero()
                        }
                    })
                    .collect();
            let cert = nonsub_verify(&s.prob, &s.x, &xstar)
                .map_err(|e| format!("seed {}: {e}", s.seed))?;
            let p2 = s
                .prob
                .with_rhs(s.prob.a().mul_vec(&xstar).unwrap())
                .unwrap();
            let px = s.prob.objective(&xstar).unwrap();
            let got = checked_solve(&p2).optimal_value().cloned();
            ensure!(
                got.as_ref() == Some(&px),
                "seed {}: P2 optimum {got:?} vs p·x* = {px}",
                s.seed
            );
            ensure!(
                cert.p2_value == px,
                "seed {}: certificate value differs",
                s.seed
            );
        }
        Ok(())
    })?;
    Ok("100 instances x 3 substitutions optimal, P2 value = p·x*".into())
}

fn birkhoff_suite() -> Check {
    for (n, count) in [(1, 1), (2, 2), (3, 6)] {
        let c = check_vertex_set(n, Execution::Parallel).map_err(|e| e.to_string())?;
        ensure!(c.holds && c.vertex_count == count, "n = {n}: {c:?}");
    }
    let seeds: Vec<(usize, u64)> = (2..=5)
        .flat_map(|n| (0..100).map(move |s| (n, s)))
        .collect();
    all_ok(&seeds, |&(n, seed)| {
        let p = random_ds(seed * 31 + n as u64, n).unwrap();
        let d = bvn_decompose(&p).map_err(|e| e.to_string())?;
        ensure!(
            d.reconstruct(n) == *p.matrix(),
            "n = {n} seed {seed}: reconstruction differs"
        );
        ensure!(
            d.weight_sum().is_one(),
            "n = {n} seed {seed}: weights sum to {}",
            d.weight_sum()
        );
        ensure!(
            d.terms.iter().all(|t| t.weight.is_positive()),
            "n = {n} seed {seed}: nonpositive weight"
        );
        Ok(())
    })?;
    for n in 1..=4 {
        for perm in lpcert::birkhoff::permutations(n, Execution::Parallel) {
            let d = bvn_decompose(&perm.to_ds()).map_err(|e| e.to_string())?;
            ensure!(
                d.terms.len() == 1 && d.terms[0].weight.is_one() && d.terms[0].perm == perm,
                "permutation {:?} decomposed as {:?}",
                perm.sigma(),
                d
            );
        }
    }
    let seeds: Vec<u64> = (0..100).collect();
    all_ok(&seeds, |&seed| {
        let p = random_fractional_ds(seed, 2 + (seed % 4) as usize).unwrap();
        let c = find_fractional_cycle(&p).map_err(|e| e.to_string())?;
        let eps = &epsilon0(&p, &c).unwrap() / &Rational::from(2);
        let (q1, q2) = perturb_pair(&p, &c, &eps).map_err(|e| e.to_string())?;
        let half = Rational::new(1, 2);
        let mid = q1
            .matrix()
            .scale(&half)
            .add(&q2.matrix().scale(&half))
            .unwrap();
        ensure!(
            mid == *p.matrix() && q1 != q2,
            "seed {seed}: midpoint identity fails"
        );
        Ok(())
    })?;
    Ok("vertex sets 1/2/6; 400 decompositions exact; permutations get weight 1; 100 midpoints exact".into())
}

fn self_certification() -> Check {
    // Unrestricted problems, including infeasible and unbounded ones.
    let seeds: Vec<u64> = (0..400).collect();
    par::map(&seeds, Execution::Parallel, |&seed| {
        let mut r = rng(seed);
        let m = r.gen_range(1..=4);
        let n = r.gen_range(1..=7);
        let g = random_lp(seed, m, n, false).unwrap();
        let b: RVector = if seed % 2 == 0 {
            g.problem.b().clone()
        } else {
            (0..m)
                .map(|_| Rational::from(r.gen_range(-6..=6i64)))
                .collect()
        };
        checked_solve(&g.problem.with_rhs(b).unwrap());
    });
    let checked = OUTCOMES_CHECKED.load(Ordering::Relaxed);
    let failed = OUTCOME_FAILURES.load(Ordering::Relaxed);
    ensure!(
        failed == 0,
        "{failed} of {checked} outcomes failed their re-check"
    );
    Ok(format!(
        "{checked} outcomes re-checked across all suites, 0 failures"
    ))
}

struct Outcome {
    passed: bool,
    line: String,
}

fn run(id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Check) -> Outcome {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let in_time = elapsed < limit;
    let (passed, detail) = match result {
        Ok(d) if in_time => (true, d),
        Ok(d) => (false, format!("{d}; over time limit")),
        Err(e) => (false, e),
    };
    let tag = if passed { "PASS" } else { "FAIL" };
    let line = format!(
        "{tag} [{id}] {name}: {detail} ({:.2}s, limit {}s)",
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    println!("{line}");
    Outcome { passed, line }
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut results = vec![
        run(1, "unbounded worked example", secs(1), worked_example),
        run(
            2,
            "optimal face = hull of basic optima",
            secs(60),
            face_suite,
        ),
    ];
    let start = Instant::now();
    let cases = catch_unwind(uniqueness_cases);
    let setup = start.elapsed();
    match cases {
        Ok(cases) => {
            results.push(run(
                3,
                "uniqueness matches oracle",
                secs(60).saturating_sub(setup),
                || uniqueness_suite(&cases),
            ));
            results.push(run(
                4,
                "uniqueness iff stable under small tilts",
                secs(120),
                || perturbation_suite(&cases),
            ));
        }
        Err(_) => {
            results.push(run(3, "uniqueness matches oracle", secs(60), || {
                Err("decide_unique panicked".into())
            }));
            results.push(run(
                4,
                "uniqueness iff stable under small tilts",
                secs(120),
                || Err("no cases".into()),
            ));
        }
    }
    results.push(run(
        5,
        "support substitution keeps optimality",
        secs(60),
        nonsub_suite,
    ));
    results.push(run(
        6,
        "doubly stochastic polytope",
        secs(120),
        birkhoff_suite,
    ));
    results.push(run(
        7,
        "solver self-certification",
        secs(60),
        self_certification,
    ));

    let failed: Vec<&Outcome> = results.iter().filter(|o| !o.passed).collect();
    println!(
        "{} of {} criteria passed",
        results.len() - failed.len(),
        results.len()
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        for o in failed {
            eprintln!("{}", o.line);
        }
        ExitCode::FAILURE
    }
}
