use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pebalg::pebbling::{pebbling_price, tradeoff_frontier, GameVariant, SearchOptions};
use pebalg_bench::search_graphs;

fn prices(c: &mut Criterion) {
    let opts = SearchOptions::default();
    let mut group = c.benchmark_group("price");
    for (name, dag) in search_graphs() {
        for variant in [GameVariant::Black, GameVariant::Reversible, GameVariant::BlackWhite] {
            if variant == GameVariant::BlackWhite && dag.n() > 12 {
                continue;
            }
            group.bench_function(format!("{name}/{variant}"), |b| {
                b.iter(|| pebbling_price(black_box(&dag), variant, &opts).unwrap())
            });
        }
    }
    group.finish();
}

fn frontiers(c: &mut Criterion) {
    let opts = SearchOptions::default();
    let mut group = c.benchmark_group("frontier");
    group.sample_size(10);
    for (name, dag) in search_graphs() {
        for variant in [GameVariant::Black, GameVariant::Reversible] {
            group.bench_function(format!("{name}/{variant}"), |b| {
                b.iter(|| tradeoff_frontier(black_box(&dag), variant, &opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, prices, frontiers);
criterion_main!(benches);
