use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use ffdist_bench::{space, threshold_set};
use ffdist_core::distance::{norm_distribution, PairCounter, DEFAULT_ENVELOPE};
use ffdist_core::spheres::all_sphere_spectra;
use ffdist_core::{distance_set, pair_count};

fn pair_counts(c: &mut Criterion) {
    let mut group = c.benchmark_group("pair_count");
    group.sample_size(20);
    for (q, d) in [(13u64, 2usize), (13, 3), (31, 3)] {
        let s = space(q, d);
        let (e, f) = (threshold_set(&s, 1), threshold_set(&s, 2));
        let id = format!("q{q}_d{d}");
        group.bench_function(BenchmarkId::new("brute_distribution", &id), |b| {
            b.iter(|| norm_distribution(black_box(&e), black_box(&f), 3).unwrap())
        });
        group.bench_function(BenchmarkId::new("single_radius", &id), |b| {
            b.iter(|| pair_count(black_box(&e), black_box(&f), 3, 1).unwrap())
        });
        let spectra = all_sphere_spectra(&s, 3);
        let counter = PairCounter::new(&e, &f, 3, DEFAULT_ENVELOPE).unwrap();
        group.bench_function(BenchmarkId::new("spectral_all_radii", &id), |b| {
            b.iter(|| (1..q as u32).map(|j| counter.count_with(j, &spectra[j as usize]).spectral).sum::<f64>())
        });
    }
    group.finish();
}

fn distance_sets(c: &mut Criterion) {
    let mut group = c.benchmark_group("distance_set");
    group.sample_size(20);
    for (q, d) in [(13u64, 2usize), (31, 2), (13, 3)] {
        let s = space(q, d);
        let size = (3.0 * (q as f64).powf((d as f64 + 1.0) / 2.0)).ceil() as usize;
        let e = ffdist_core::sample_point_set(&s, size.min(s.size()), 4).unwrap();
        group.bench_function(BenchmarkId::from_parameter(format!("q{q}_d{d}")), |b| {
            b.iter(|| distance_set(black_box(&e), 3).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, pair_counts, distance_sets);
criterion_main!(benches);
