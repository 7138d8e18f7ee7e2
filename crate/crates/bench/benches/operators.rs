use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use dirmax::directions::{geometric_slopes, Slope, SlopeSet};
use dirmax::gridops::{directional_max, gamma_apply, parallelogram_max, sector_project, ScaleList, Sector, SlopeInterval};
use dirmax::kernels::KernelParams;
use dirmax_bench::random_grid;

fn bench_parallelogram(c: &mut Criterion) {
    let mut group = c.benchmark_group("parallelogram_max");
    for &n in &[128usize, 256, 512] {
        let f = random_grid(n, 1);
        let scales = ScaleList::dyadic(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| parallelogram_max(&f, 0.375, &scales).unwrap())
        });
    }
    group.finish();
}

fn bench_directional(c: &mut Criterion) {
    let mut group = c.benchmark_group("directional_max_256");
    group.sample_size(10);
    let f = random_grid(256, 2);
    let scales = ScaleList::dyadic(256);
    for &count in &[4usize, 16, 64] {
        let vals: Vec<f64> = (1..=count).map(|i| i as f64 / (count + 1) as f64).collect();
        let omega = SlopeSet::new(&vals).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(count), &count, |b, _| {
            b.iter(|| directional_max(&f, &omega, &scales).unwrap())
        });
    }
    group.finish();
}

fn bench_gamma(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma_apply");
    for &n in &[128usize, 256] {
        let f = random_grid(n, 3);
        let params = KernelParams::new(0.3, 1.5, 2.0, Slope::new(0.4).unwrap()).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, _| {
            b.iter(|| gamma_apply(&f, &params).unwrap())
        });
    }
    group.finish();
}

fn bench_sector(c: &mut Criterion) {
    let f = random_grid(256, 4);
    let sector = Sector::doubled_slope(SlopeInterval::new(0.3, 0.42).unwrap());
    c.bench_function("sector_project_256", |b| {
        b.iter(|| sector_project(&f, &sector).unwrap())
    });
}

fn bench_certify(c: &mut Criterion) {
    let set = geometric_slopes(0.4, 8, Slope::new(0.9).unwrap()).unwrap();
    c.bench_function("geometric_certificate", |b| {
        b.iter(|| {
            dirmax::directions::verify_certificate(
                &set,
                set.certificate.as_ref().unwrap(),
                dirmax::directions::DEFAULT_TOL,
            )
            .unwrap()
        })
    });
}

criterion_group!(
    benches,
    bench_parallelogram,
    bench_directional,
    bench_gamma,
    bench_sector,
    bench_certify
);
criterion_main!(benches);
