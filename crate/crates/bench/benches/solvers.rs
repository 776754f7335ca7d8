use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use edom_bench::{bipartite, cograph, tree};
use edom_core::bipartite::{crown_kernel, eds_decide, normalize_one_side};
use edom_core::cograph::{build_cotree, solve_reservists};
use edom_core::families::ladder7;
use edom_core::gadgets::{gen_pspace_unipolar, UnorderedCnf};
use edom_core::tree::solve_tree;
use edom_core::solve_exact;

fn oracle(c: &mut Criterion) {
    let f = ladder7();
    c.bench_function("oracle/ladder7", |b| b.iter(|| solve_exact(black_box(&f.graph), &f.guards)));
    let mut group = c.benchmark_group("oracle/tree");
    for n in [8, 12, 16] {
        let (g, d) = tree(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| b.iter(|| solve_exact(&g, &d)));
    }
    group.finish();
}

fn trees(c: &mut Criterion) {
    let mut group = c.benchmark_group("tree");
    for n in [100, 1000, 10000] {
        let (g, d) = tree(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| b.iter(|| solve_tree(&g, &d)));
    }
    group.finish();
}

fn cographs(c: &mut Criterion) {
    let mut group = c.benchmark_group("cograph");
    for n in [50, 200, 800] {
        let (g, d) = cograph(n);
        let t = build_cotree(&g).unwrap();
        group.bench_with_input(BenchmarkId::new("cotree", n), &n, |b, _| b.iter(|| build_cotree(&g)));
        group.bench_with_input(BenchmarkId::new("value", n), &n, |b, _| b.iter(|| solve_reservists(&t, &d, 1)));
    }
    group.finish();
}

fn bipartite_graphs(c: &mut Criterion) {
    let mut group = c.benchmark_group("bipartite");
    for n in [100, 400, 1600] {
        let (g, d) = bipartite(n, 4.0 / n as f64);
        let h = normalize_one_side(&g, &d).unwrap();
        group.bench_with_input(BenchmarkId::new("eds", n), &n, |b, _| b.iter(|| eds_decide(&g, &d)));
        group.bench_with_input(BenchmarkId::new("crown", n), &n, |b, _| b.iter(|| crown_kernel(&h, &d)));
    }
    group.finish();
}

fn gadgets(c: &mut Criterion) {
    let phi = UnorderedCnf::parse("k 2\nx1 ~y1\n~x1 x2 y2\n").unwrap();
    c.bench_function("gadget/pspace", |b| b.iter(|| gen_pspace_unipolar(black_box(&phi))));
}

criterion_group!(benches, oracle, trees, cographs, bipartite_graphs, gadgets);
criterion_main!(benches);
