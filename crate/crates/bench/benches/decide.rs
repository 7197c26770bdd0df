use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pebalg::algebra::{FieldSpec, DEFAULT_DIMENSION_CAP, DEFAULT_PRIME};
use pebalg::decide::min_degree;
use pebalg::formulas::pebbling_system;
use pebalg::proofs::ProofSystem;
use pebalg_bench::decide_graphs;

fn min_degrees(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_degree");
    group.sample_size(10);
    for field in [FieldSpec::Prime(DEFAULT_PRIME), FieldSpec::Rational] {
        for (name, dag) in decide_graphs() {
            let sys = pebbling_system(&dag, field).unwrap();
            for system in [ProofSystem::Ns, ProofSystem::Mc, ProofSystem::Pc] {
                group.bench_function(format!("{name}/{system}/{field}"), |b| {
                    b.iter(|| min_degree(black_box(&sys), system, sys.num_vars + 1, DEFAULT_DIMENSION_CAP).unwrap())
                });
            }
        }
    }
    group.finish();
}

criterion_group!(benches, min_degrees);
criterion_main!(benches);
