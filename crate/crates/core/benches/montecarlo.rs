use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qfdiv::fgen::FGenerator;
use qfdiv::maximal::verify_witness;
use qfdiv::montecarlo::map_samples_seq;
#[cfg(feature = "parallel")]
use qfdiv::montecarlo::map_samples_par;
use qfdiv::rng::SampleRng;
use qfdiv::states::{random_density_with, satisfies_abs_condition};

fn witness_residual(rng: &mut SampleRng, n: usize) -> f64 {
    let rho = random_density_with(rng, n, n).unwrap();
    let sigma = random_density_with(rng, n, n).unwrap();
    verify_witness(&rho, &sigma, &FGenerator::kl(), 1e-9)
        .unwrap()
        .max_residual()
}

fn condition(rng: &mut SampleRng) -> bool {
    let rho = random_density_with(rng, 4, 4).unwrap();
    let sigma = random_density_with(rng, 4, 4).unwrap();
    satisfies_abs_condition(&rho, &sigma, 1e-9).unwrap()
}

fn bench_witness(c: &mut Criterion) {
    let mut group = c.benchmark_group("witness_sweep");
    group.sample_size(10);
    for n in [2usize, 4, 8] {
        let samples = 256;
        group.bench_with_input(BenchmarkId::new("sequential", n), &n, |b, &n| {
            b.iter(|| black_box(map_samples_seq(1, samples, |_, rng| witness_residual(rng, n))))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", n), &n, |b, &n| {
            b.iter(|| black_box(map_samples_par(1, samples, |_, rng| witness_residual(rng, n))))
        });
    }
    group.finish();
}

fn bench_condition_rate(c: &mut Criterion) {
    let mut group = c.benchmark_group("condition_rate_dim4");
    group.sample_size(10);
    let samples = 1000;
    group.bench_function("sequential", |b| {
        b.iter(|| black_box(map_samples_seq(42, samples, |_, rng| condition(rng))))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| black_box(map_samples_par(42, samples, |_, rng| condition(rng))))
    });
    group.finish();
}

criterion_group!(benches, bench_witness, bench_condition_rate);
criterion_main!(benches);
