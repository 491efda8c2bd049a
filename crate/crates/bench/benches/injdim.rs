use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use gorcheck_bench::generated;
use gorcheck_core::{fixtures, inj_dim_algebra, Oracle};

fn fixtures_engine(c: &mut Criterion) {
    let mut group = c.benchmark_group("engine_fixture");
    for (name, text) in [("DT", fixtures::DT), ("C8", fixtures::C8)] {
        let alg = fixtures::load(text);
        group.bench_function(name, |b| b.iter(|| inj_dim_algebra(black_box(&alg)).unwrap()));
    }
    group.finish();
}

fn generated_engine_vs_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("generated");
    group.sample_size(20);
    for (vertices, arrows) in [(6, 10), (10, 16), (14, 24)] {
        let algs = generated(20, vertices, arrows);
        group.bench_with_input(BenchmarkId::new("engine", vertices), &algs, |b, algs| {
            b.iter(|| algs.iter().map(|a| inj_dim_algebra(a).unwrap()).max())
        });
        group.bench_with_input(BenchmarkId::new("oracle_cutoff_8", vertices), &algs, |b, algs| {
            b.iter(|| {
                for a in algs {
                    black_box(Oracle::new(a.bound_quiver(), 2).unwrap().projective_dims(8).unwrap());
                }
            })
        });
    }
    group.finish();
}

criterion_group!(benches, fixtures_engine, generated_engine_vs_oracle);
criterion_main!(benches);
