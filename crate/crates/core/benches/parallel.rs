//! Sequential vs parallel execution of the batch-shaped operations.
//!
//! Build with `--no-default-features` to see the fallback path: both
//! modes then run sequentially.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use lpcert::birkhoff::{bvn_decompose_with, check_vertex_set, permutations};
use lpcert::generate::{random_ds, random_lp};
use lpcert::par::{self, Execution};
use lpcert::solve;
use lpcert::theorems::decide_unique;
use lpcert::vertex::enumerate_basic_with;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn vertex_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_basic");
    group.sample_size(10);
    for (m, n) in [(3, 10), (4, 14)] {
        let g = random_lp(11, m, n, true).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(
                BenchmarkId::new(name, format!("{m}x{n}")),
                &g.problem,
                |b, p| {
                    b.iter(|| {
                        enumerate_basic_with(black_box(p.a()), black_box(p.b()), exec).unwrap()
                    })
                },
            );
        }
    }
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "ds3"), |b| {
            b.iter(|| check_vertex_set(3, exec).unwrap())
        });
    }
    group.finish();
}

fn birkhoff(c: &mut Criterion) {
    let mut group = c.benchmark_group("bvn_decompose");
    group.sample_size(10);
    for n in [5, 6] {
        let p = random_ds(3, n).unwrap();
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, n), &p, |b, p| {
                b.iter(|| bvn_decompose_with(black_box(p), exec).unwrap())
            });
        }
    }
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "permutations-8"), |b| {
            b.iter(|| permutations(black_box(8), exec))
        });
    }
    group.finish();
}

fn batch_uniqueness(c: &mut Criterion) {
    let problems: Vec<_> = (0..64)
        .map(|seed| random_lp(seed, 3, 6, true).unwrap().problem)
        .filter(|p| solve(p).is_optimal())
        .collect();
    let mut group = c.benchmark_group("decide_unique_batch");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                par::map(&problems, exec, |p| {
                    let x = match solve(p) {
                        lpcert::SolveOutcome::Optimal { primal, .. } => primal.x,
                        _ => unreachable!("filtered to optimal problems"),
                    };
                    decide_unique(p, &x).unwrap().is_unique()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, vertex_enumeration, birkhoff, batch_uniqueness);
criterion_main!(benches);
