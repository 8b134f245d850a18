use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use modk_bench::{grid, triangles, Fixture};
use modk_core::{count_colorings_dp, kappa_dp};

fn fixtures() -> Vec<Fixture> {
    vec![grid(2, 12, 3), grid(3, 10, 5), grid(4, 8, 5), triangles(6, 3)]
}

fn state_tables(c: &mut Criterion) {
    let mut group = c.benchmark_group("state_tables");
    for f in fixtures() {
        group.bench_with_input(BenchmarkId::new("kappa_dp", &f.name), &f, |b, f| {
            b.iter(|| {
                for w in &f.ws {
                    black_box(kappa_dp(&f.graph, &f.orientation, &f.pd, w).unwrap());
                }
            })
        });
        group.bench_with_input(BenchmarkId::new("color_dp", &f.name), &f, |b, f| {
            b.iter(|| black_box(count_colorings_dp(&f.graph, &f.pd, f.k).unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, state_tables);
criterion_main!(benches);
