use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use nfsec_bench::{eve, reference_config, user};
use nfsec_core::{
    design_proposed, oracle_grid_search, search_radius, signal_objective, OracleGrids,
    SearchSettings,
};

/// The 1-D search at the grid sizes used by the complexity check; cost
/// should scale linearly in M.
fn bench_search_scaling(c: &mut Criterion) {
    let cfg = reference_config();
    let (a, q) = (user(), eve());
    let mut group = c.benchmark_group("radius_search");
    for m in [256usize, 1024, 4096] {
        let settings = SearchSettings {
            grid_points: m,
            ..SearchSettings::for_config(&cfg)
        };
        group.bench_with_input(BenchmarkId::from_parameter(m), &settings, |b, settings| {
            b.iter(|| search_radius(|r| signal_objective(&cfg, &a, &q, black_box(r)), settings))
        });
    }
    group.finish();
}

fn bench_designs(c: &mut Criterion) {
    let cfg = reference_config();
    let (a, q) = (user(), eve());
    c.bench_function("design_proposed", |b| {
        let settings = SearchSettings::for_config(&cfg);
        b.iter(|| design_proposed(&cfg, black_box(&a), black_box(&q), &settings))
    });
    c.bench_function("oracle_grid_16x16x16", |b| {
        let grids = OracleGrids {
            r_s_steps: 16,
            r_a_steps: 16,
            alpha_steps: 16,
        };
        b.iter(|| oracle_grid_search(&cfg, black_box(&a), black_box(&q), &grids))
    });
}

criterion_group!(benches, bench_search_scaling, bench_designs);
criterion_main!(benches);
