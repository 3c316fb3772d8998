use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use marketnet_bench::{factor_weights, random_graph};
use marketnet_core::{degree_distribution, market_graph, max_clique, max_independent_set, maximum_spanning_tree};

fn cliques(c: &mut Criterion) {
    let mut group = c.benchmark_group("max_clique");
    for p in [0.3, 0.5, 0.7] {
        let g = random_graph(50, p, 1);
        group.bench_with_input(BenchmarkId::new("n50", p), &g, |b, g| {
            b.iter(|| max_clique(black_box(g)))
        });
    }
    group.finish();

    let g = random_graph(50, 0.5, 2);
    c.bench_function("max_independent_set/n50_p0.5", |b| {
        b.iter(|| max_independent_set(black_box(&g)))
    });
}

fn graphs_and_trees(c: &mut Criterion) {
    let w = factor_weights(50);
    c.bench_function("market_graph+degrees/n50", |b| {
        b.iter(|| degree_distribution(&market_graph(black_box(&w), 0.3)))
    });
    c.bench_function("maximum_spanning_tree/n50", |b| {
        b.iter(|| maximum_spanning_tree(black_box(&w)))
    });
}

criterion_group!(structures, cliques, graphs_and_trees);
criterion_main!(structures);
