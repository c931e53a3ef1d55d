use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use lpcert::birkhoff::{
    bvn_decompose, check_vertex_set, epsilon0, find_fractional_cycle, perturb_pair,
    DoublyStochastic,
};
use lpcert::exact::{RMatrix, RVector, Rational};
use lpcert::generate::{random_ds, random_lp};
use lpcert::lp::{solve, LpProblem, SolveOutcome};
use lpcert::par::Execution;
use lpcert::theorems::{
    appa_alternative_test, check_interval_relaxation, decide_unique, nonsub_verify,
    optimal_face_decompose, perturbation_holds, IntervalData, TheoremError, UniquenessVerdict,
};
use lpcert::vertex::{enumerate_basic, enumerate_basic_optimal};

/// Exact LP certificates from the command line. Every command prints one
/// JSON document; exit status is 0 for a positive answer, 2 for a negative
/// one, and 1 on error.
#[derive(Debug, Parser)]
#[command(name = "lpcert", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct Input {
    /// Problem file: {"A": [[..]], "b": [..], "p": [..]}.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve max p·x s.t. A x = b, x ≥ 0.
    Solve(Input),
    /// List the basic feasible solutions.
    Vertices {
        #[command(flatten)]
        io: Input,
        /// Only the optimal ones.
        #[arg(long)]
        optimal: bool,
    },
    /// Decide whether an optimum is the only one.
    Unique {
        #[command(flatten)]
        io: Input,
        #[arg(long)]
        xbar: PathBuf,
    },
    /// Uniqueness of a basic optimum via the normalized cone LP.
    Appa {
        #[command(flatten)]
        io: Input,
        #[arg(long)]
        xbar: PathBuf,
    },
    /// Certify x* optimal after replacing b by A x*.
    Nonsub {
        #[command(flatten)]
        io: Input,
        #[arg(long)]
        xbar: PathBuf,
        #[arg(long)]
        xstar: PathBuf,
    },
    /// Check whether x̄ stays optimal for objective p + δq.
    Perturb {
        #[command(flatten)]
        io: Input,
        #[arg(long)]
        xbar: PathBuf,
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        delta: Rational,
    },
    /// Write an optimal point as a convex combination of basic optima.
    Face {
        #[command(flatten)]
        io: Input,
        #[arg(long)]
        point: PathBuf,
    },
    /// Split a doubly stochastic matrix along a fractional cycle.
    DsPerturb {
        /// Matrix file: {"n": .., "entries": [[..]]}.
        #[arg(long)]
        input: PathBuf,
        /// Step size; defaults to half the largest admissible one.
        #[arg(long)]
        delta: Option<Rational>,
    },
    /// Decompose a doubly stochastic matrix into permutation matrices.
    Bvn {
        #[arg(long)]
        input: PathBuf,
    },
    /// Check that the n×n doubly stochastic system has exactly the
    /// permutation matrices as basic solutions.
    VerifyDsVertices {
        #[arg(long)]
        n: usize,
    },
    /// Check A⁻x ≤ b ≤ A⁺x on the tight rows of a point.
    IntervalCheck {
        /// {"A": .., "b": .., "A_minus": .., "A_plus": ..}.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        point: PathBuf,
    },
    /// Emit a seeded random instance.
    Generate {
        kind: GenerateKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// random-lp: make the feasible set bounded.
        #[arg(long)]
        bounded: bool,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GenerateKind {
    RandomLp,
    RandomDs,
}

#[derive(Debug)]
struct Report {
    verdict: Value,
    summary: String,
    exit_code: u8,
}

impl Report {
    fn new(verdict: impl Serialize, summary: impl Into<String>, positive: bool) -> Result<Self> {
        Ok(Report {
            verdict: serde_json::to_value(verdict)?,
            summary: summary.into(),
            exit_code: if positive { 0 } else { 2 },
        })
    }
}

/// A vector file holds either a bare array or {"x": [..]}.
#[derive(Deserialize)]
#[serde(untagged)]
enum VectorFile {
    Bare(RVector),
    Wrapped { x: RVector },
}

#[derive(Deserialize)]
struct IntervalInput {
    #[serde(rename = "A")]
    a: RMatrix,
    b: RVector,
    #[serde(flatten)]
    bounds: IntervalData,
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_vector(path: &Path) -> Result<RVector> {
    Ok(match read_json::<VectorFile>(path)? {
        VectorFile::Bare(v) | VectorFile::Wrapped { x: v } => v,
    })
}

fn run(command: Command) -> Result<Report> {
    match command {
        Command::Solve(io) => {
            let prob: LpProblem = read_json(&io.input)?;
            let outcome = solve(&prob);
            let summary = match &outcome {
                SolveOutcome::Optimal { primal, .. } => format!("optimal, value {}", primal.value),
                SolveOutcome::Infeasible { .. } => "infeasible (Farkas witness attached)".into(),
                SolveOutcome::Unbounded { ray } => format!("unbounded along {ray}"),
            };
            let ok = outcome.is_optimal();
            Report::new(outcome, summary, ok)
        }
        Command::Vertices { io, optimal } => {
            let prob: LpProblem = read_json(&io.input)?;
            let set = if optimal {
                enumerate_basic_optimal(&prob)?
            } else {
                enumerate_basic(prob.a(), prob.b())?
            };
            let which = if optimal {
                "basic optimal"
            } else {
                "basic feasible"
            };
            let summary = format!("{} {which} solutions", set.len());
            Report::new(set, summary, true)
        }
        Command::Unique { io, xbar } => {
            let prob: LpProblem = read_json(&io.input)?;
            uniqueness_report(decide_unique(&prob, &read_vector(&xbar)?)?)
        }
        Command::Appa { io, xbar } => {
            let prob: LpProblem = read_json(&io.input)?;
            uniqueness_report(appa_alternative_test(&prob, &read_vector(&xbar)?)?)
        }
        Command::Nonsub { io, xbar, xstar } => {
            let prob: LpProblem = read_json(&io.input)?;
            let cert = nonsub_verify(&prob, &read_vector(&xbar)?, &read_vector(&xstar)?)?;
            let summary = format!(
                "x* is optimal for b* = {}, value {}",
                cert.bstar, cert.p2_value
            );
            Report::new(cert, summary, true)
        }
        Command::Perturb { io, xbar, q, delta } => {
            let prob: LpProblem = read_json(&io.input)?;
            let v = perturbation_holds(&prob, &read_vector(&xbar)?, &read_vector(&q)?, &delta)?;
            let summary = if v.holds() {
                format!("x̄ stays optimal at δ = {delta}")
            } else {
                format!("x̄ is no longer optimal at δ = {delta}")
            };
            let ok = v.holds();
            Report::new(v, summary, ok)
        }
        Command::Face { io, point } => {
            let prob: LpProblem = read_json(&io.input)?;
            let dec = optimal_face_decompose(&prob, &read_vector(&point)?)?;
            let summary = format!(
                "convex combination of {} basic optima",
                dec.weights.iter().filter(|w| w.is_positive()).count()
            );
            Report::new(dec, summary, true)
        }
        Command::DsPerturb { input, delta } => {
            let p: DoublyStochastic = read_json(&input)?;
            let cycle = find_fractional_cycle(&p)?;
            let e0 = epsilon0(&p, &cycle)?;
            let eps = delta.unwrap_or_else(|| &e0 / &Rational::from(2));
            let (q1, q2) = perturb_pair(&p, &cycle, &eps)?;
            let summary = format!(
                "split along a {}-cycle with ε = {eps} (ε₀ = {e0})",
                cycle.len()
            );
            let verdict = json!({
                "cycle": cycle,
                "epsilon0": e0,
                "epsilon": eps,
                "q1": q1,
                "q2": q2,
            });
            Report::new(verdict, summary, true)
        }
        Command::Bvn { input } => {
            let p: DoublyStochastic = read_json(&input)?;
            let dec = bvn_decompose(&p)?;
            let summary = format!("{} permutation matrices", dec.terms.len());
            Report::new(dec, summary, true)
        }
        Command::VerifyDsVertices { n } => {
            let check = check_vertex_set(n, Execution::default())?;
            let summary = format!(
                "{} basic solutions, {} permutation matrices: {}",
                check.vertex_count,
                check.permutation_count,
                if check.holds {
                    "sets agree"
                } else {
                    "sets differ"
                }
            );
            let ok = check.holds;
            Report::new(check, summary, ok)
        }
        Command::IntervalCheck { input, point } => {
            let data: IntervalInput = read_json(&input)?;
            let check =
                check_interval_relaxation(&data.a, &data.bounds, &data.b, &read_vector(&point)?)?;
            let summary = match check.first_violation {
                None => "every tight row satisfies A⁻x ≤ b ≤ A⁺x".to_string(),
                Some(i) => format!("row {} is tight but outside [A⁻x, A⁺x]", i + 1),
            };
            let ok = check.holds;
            Report::new(check, summary, ok)
        }
        Command::Generate {
            kind,
            seed,
            n,
            m,
            bounded,
        } => match kind {
            GenerateKind::RandomLp => {
                let g = random_lp(seed, m, n, bounded)?;
                Report::new(g, format!("random {m}×{n} problem, seed {seed}"), true)
            }
            GenerateKind::RandomDs => {
                let d = random_ds(seed, n)?;
                Report::new(
                    d,
                    format!("random {n}×{n} doubly stochastic matrix, seed {seed}"),
                    true,
                )
            }
        },
    }
}

fn uniqueness_report(v: UniquenessVerdict) -> Result<Report> {
    let summary = match v.witness() {
        None => "x̄ is the unique optimum".to_string(),
        Some(h) => format!("not unique: x̄ + εh is optimal for small ε > 0 with h = {h}"),
    };
    let ok = v.is_unique();
    Report::new(v, summary, ok)
}

fn error_json(err: &anyhow::Error) -> Value {
    let message = format!("{err:#}");
    if let Some(TheoremError::UnboundedFeasibleSet { ray }) = err.downcast_ref::<TheoremError>() {
        return json!({"error": {"kind": "unbounded_feasible_set", "message": message, "ray": ray}});
    }
    let kind = if err.downcast_ref::<std::io::Error>().is_some() {
        "io"
    } else if err.downcast_ref::<serde_json::Error>().is_some() {
        "parse"
    } else {
        "precondition"
    };
    json!({"error": {"kind": kind, "message": message}})
}

fn emit(value: &Value, output: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match output {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|report| {
        emit(&report.verdict, cli.output.as_deref())?;
        Ok(report)
    });
    match result {
        Ok(report) => {
            eprintln!("{}", report.summary);
            ExitCode::from(report.exit_code)
        }
        Err(err) => {
            eprintln!("{}", error_json(&err));
            ExitCode::from(1)
        }
    }
}
