use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sphere_green::fundsol::greens_from_angle;
use sphere_green::potentials::{binding_by_quadrature, DensitySpec, UniformCap};
use sphere_green::specfun::{elliptic_k, ferrers_q, FerrersIndex};
use sphere_green::{fourier_coeff_quadrature, fourier_coeff_s2, fourier_coeff_s3, gegenbauer_sum, SpherePoint};

fn kernels(c: &mut Criterion) {
    let mut g = c.benchmark_group("greens");
    for d in [2usize, 3, 4, 7] {
        g.bench_with_input(BenchmarkId::from_parameter(d), &d, |b, &d| {
            b.iter(|| greens_from_angle(d, black_box(2.0), black_box(1.1)).unwrap())
        });
    }
    g.finish();
    c.bench_function("elliptic_k", |b| b.iter(|| elliptic_k(black_box(0.93)).unwrap()));
    c.bench_function("ferrers_q half-integer", |b| {
        b.iter(|| ferrers_q(FerrersIndex::new(0.5, 1.5), black_box(0.3)).unwrap())
    });
}

fn fourier(c: &mut Criterion) {
    c.bench_function("fourier_s2 m=5", |b| b.iter(|| fourier_coeff_s2(5, black_box(0.7), black_box(1.1)).unwrap()));
    let mut g = c.benchmark_group("fourier_s3");
    for m in [0u32, 4, 16] {
        g.bench_with_input(BenchmarkId::from_parameter(m), &m, |b, &m| {
            b.iter(|| fourier_coeff_s3(m, black_box(0.7), 1.1, 0.4, 0.9).unwrap())
        });
    }
    g.finish();
    let p = SpherePoint::new(1.0, 0.7, vec![0.4], 0.0).unwrap();
    let q = SpherePoint::new(1.0, 1.1, vec![0.9], 0.0).unwrap();
    c.bench_function("fourier_quadrature d=3 m=4", |b| {
        b.iter(|| fourier_coeff_quadrature(3, 4, black_box(&p), &q, 1e-10).unwrap())
    });
    let p = SpherePoint::new(1.0, 0.5, vec![0.3], 0.2).unwrap();
    let q = SpherePoint::new(1.0, 1.0, vec![0.9], 1.4).unwrap();
    c.bench_function("gegenbauer_sum d=3 L=40", |b| b.iter(|| gegenbauer_sum(3, 1.0, black_box(&p), &q, 40).unwrap()));
}

fn potentials(c: &mut Criterion) {
    let spec = DensitySpec::Ball3 { rho0: 1.0, theta0: 0.5, r: 2.0 };
    c.bench_function("potential ball3 closed form", |b| b.iter(|| spec.potential(black_box(1.3)).unwrap()));
    let cap = UniformCap { rho0: 1.0, theta0: 0.5 };
    let mut g = c.benchmark_group("binding_quadrature");
    g.sample_size(10);
    g.bench_function("d=2", |b| b.iter(|| binding_by_quadrature(2, 1.0, black_box(&cap)).unwrap()));
    g.finish();
}

criterion_group!(benches, kernels, fourier, potentials);
criterion_main!(benches);
