use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use nfsec_bench::{eve, reference_config, user};
use nfsec_core::fresnel::correlation_approx;
use nfsec_core::{
    alpha_polynomial, closed_form_secrecy, correlation_exact, fresnel_c, fresnel_s, optimal_alpha,
    steering_vector, CorrelationSet,
};

fn bench_fresnel(c: &mut Criterion) {
    c.bench_function("fresnel_pair_series", |b| {
        b.iter(|| (fresnel_c(black_box(0.9)), fresnel_s(black_box(0.9))))
    });
    c.bench_function("fresnel_pair_auxiliary", |b| {
        b.iter(|| (fresnel_c(black_box(2.7)), fresnel_s(black_box(2.7))))
    });
}

fn bench_correlation(c: &mut Criterion) {
    let cfg = reference_config();
    let a = user();
    let q = eve();
    c.bench_function("steering_vector_n513", |b| {
        b.iter(|| steering_vector(&cfg, black_box(&a)))
    });
    c.bench_function("correlation_exact_n513", |b| {
        b.iter(|| correlation_exact(&cfg, black_box(&a), black_box(&q)))
    });
    c.bench_function("correlation_fresnel_approx", |b| {
        b.iter(|| correlation_approx(&cfg, black_box(&a), black_box(&q)).unwrap())
    });
}

fn bench_closed_form(c: &mut Criterion) {
    let cfg = reference_config();
    let rhos = CorrelationSet::new(0.95, 0.3, 0.4, 0.9).unwrap();
    c.bench_function("closed_form_secrecy", |b| {
        b.iter(|| {
            closed_form_secrecy(
                black_box(&rhos),
                1.3e-7,
                2.0e-7,
                black_box(0.2),
                cfg.tx_power_w,
                cfg.noise_power_w,
            )
        })
    });
    c.bench_function("closed_form_alpha", |b| {
        b.iter(|| {
            let poly = alpha_polynomial(
                black_box(&rhos),
                1.3e-7,
                2.0e-7,
                cfg.tx_power_w,
                cfg.noise_power_w,
            );
            optimal_alpha(&poly).unwrap()
        })
    });
}

criterion_group!(benches, bench_fresnel, bench_correlation, bench_closed_form);
criterion_main!(benches);
