//! Sequential vs data-parallel solver timings.
//!
//! `sequential` pins the pool to one worker; `parallel` uses every available core. Building with
//! `--no-default-features` compiles rayon out, in which case both groups run sequentially.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use approval_outliers::approx::{approx_sampling, ApproxConfig, Epsilon};
use approval_outliers::exact::{solve_committee_enum, solve_voterset_enum, SolveOptions};
use approval_outliers::par::Threads;
use approval_outliers::{Election, OutlierQuery, ScoringRule};

fn election(m: usize, n: usize, seed: u64) -> Election {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lists: Vec<Vec<usize>> = (0..n)
        .map(|_| (0..m).filter(|_| rng.gen_bool(0.4)).collect())
        .collect();
    Election::from_lists(m, &lists).unwrap()
}

fn modes() -> [(&'static str, Threads); 2] {
    [
        ("sequential", Threads(Some(1))),
        ("parallel", Threads(None)),
    ]
}

fn committee_enum(c: &mut Criterion) {
    let mut group = c.benchmark_group("committee_enum");
    group.sample_size(10);
    for m in [16, 20] {
        let e = election(m, 40, m as u64);
        let q = OutlierQuery::new(ScoringRule::Minisum, m / 2, 5);
        for (name, threads) in modes() {
            let opts = SolveOptions {
                threads,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(name, m), &m, |b, _| {
                b.iter(|| solve_committee_enum(&e, &q, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn voterset_enum(c: &mut Criterion) {
    let mut group = c.benchmark_group("voterset_enum");
    group.sample_size(10);
    for n in [18, 22] {
        let e = election(12, n, n as u64);
        let q = OutlierQuery::new(ScoringRule::Disapproval, 4, 3);
        for (name, threads) in modes() {
            let opts = SolveOptions {
                threads,
                ..Default::default()
            };
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, _| {
                b.iter(|| solve_voterset_enum(&e, &q, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("sampling_exhaustive");
    group.sample_size(10);
    let e = election(24, 30, 7);
    let q = OutlierQuery::new(ScoringRule::Minisum, 8, 4);
    for r in [3, 4] {
        for (name, threads) in modes() {
            let config = ApproxConfig {
                sample_size: Some(r),
                threads,
                ..ApproxConfig::new(Epsilon::new(1, 2).unwrap())
            };
            group.bench_with_input(BenchmarkId::new(name, r), &r, |b, _| {
                b.iter(|| approx_sampling(&e, &q, &config).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, committee_enum, voterset_enum, sampling);
criterion_main!(benches);
