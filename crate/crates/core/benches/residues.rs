//! Rayon pool versus a single worker on the parallel hot spots: residue terms
//! over adapted nested sets, signatures over sample points, and region
//! splitting for big cells. Build with `--no-default-features` to time the
//! plain sequential fallback instead.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use polyflow_core::cells::{big_cells, sample_points, BasisIndex, StratumIndex};
use polyflow_core::{Engine, MagicConfig, OrientedGraph, VectorConfig};
use rayon::ThreadPool;

fn pools() -> Vec<(&'static str, ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let all = rayon::ThreadPoolBuilder::new().build().unwrap();
    vec![("threads=1", one), ("threads=default", all)]
}

fn a3() -> VectorConfig {
    let mut v = Vec::new();
    for i in 0..4 {
        for j in i + 1..4 {
            let mut x = vec![0; 4];
            x[i] = 1;
            x[j] = -1;
            v.push(x);
        }
    }
    VectorConfig::new(4, v).unwrap()
}

fn counting(c: &mut Criterion) {
    let m33 = Engine::for_graph(MagicConfig::new(3, 3).unwrap().graph().clone()).unwrap();
    let k5 = Engine::for_graph(OrientedGraph::complete(5)).unwrap();
    let mut group = c.benchmark_group("ehrhart");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(
            BenchmarkId::new("M(3,3) margins (2,1,1|1,1,2)", name),
            |b| b.iter(|| pool.install(|| m33.ehrhart(&[2, 1, 1, -1, -1, -2]).unwrap())),
        );
        group.bench_function(BenchmarkId::new("K5 flow (-4,-1,0,2,3)", name), |b| {
            b.iter(|| pool.install(|| k5.ehrhart(&[-4, -1, 0, 2, 3]).unwrap()))
        });
    }
    group.finish();
}

fn strata(c: &mut Criterion) {
    let cfg = a3();
    let points = sample_points(&cfg, 400);
    let st = StratumIndex::new(&cfg);
    let all = BasisIndex::new(&cfg);
    let mut group = c.benchmark_group("signatures");
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new("A3 400 points", name), |b| {
            b.iter(|| {
                pool.install(|| {
                    let x = polyflow_core::par::map(&points, |p| st.signature(p));
                    let y = polyflow_core::par::map(&points, |p| all.signature(p));
                    (x, y)
                })
            })
        });
    }
    group.finish();

    let m23 = MagicConfig::new(2, 3).unwrap().config().clone();
    let mut group = c.benchmark_group("big_cells");
    group.sample_size(10);
    for (name, pool) in pools() {
        group.bench_function(BenchmarkId::new("A3", name), |b| {
            b.iter(|| pool.install(|| big_cells(&cfg).unwrap()))
        });
        group.bench_function(BenchmarkId::new("M(2,3)", name), |b| {
            b.iter(|| pool.install(|| big_cells(&m23).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, counting, strata);
criterion_main!(benches);
