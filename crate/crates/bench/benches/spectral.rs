// SPDX-License-Identifier: Apache-2.0

use std::hint::black_box;

use criterion::{BenchmarkId, Criterion, criterion_group, criterion_main};
use vnent_bench::er;
use vnent_core::spectral::{
    entropy_centrality_all, entropy_centrality_approx_all, entropy_s2, laplacian_spectrum,
};

fn eigenvalues(c: &mut Criterion) {
    let mut group = c.benchmark_group("laplacian_spectrum");
    for n in [50, 100, 200, 400] {
        let g = er(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| laplacian_spectrum(black_box(g)).unwrap())
        });
    }
    group.finish();
}

fn centrality(c: &mut Criterion) {
    let mut group = c.benchmark_group("entropy_centrality");
    group.sample_size(10);
    for n in [50, 100] {
        let g = er(n);
        group.bench_with_input(BenchmarkId::new("exact", n), &g, |b, g| {
            b.iter(|| entropy_centrality_all(black_box(g)).unwrap())
        });
    }
    for n in [100, 1000, 10_000] {
        let g = er(n);
        group.bench_with_input(BenchmarkId::new("approx", n), &g, |b, g| {
            b.iter(|| entropy_centrality_approx_all(black_box(g)))
        });
        group.bench_with_input(BenchmarkId::new("s2", n), &g, |b, g| {
            b.iter(|| entropy_s2(black_box(g)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, eigenvalues, centrality);
criterion_main!(benches);
