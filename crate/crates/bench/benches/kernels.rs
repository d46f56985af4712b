use criterion::{black_box, criterion_group, criterion_main, Criterion};
use gini_core::{
    h_jet, ln_gini, ln_gini_quadrature, EvalConfig, ParamPair, PositivePair, ScanSpec,
};

fn evaluation(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    let pair = PositivePair::new(3.0, 5.0).unwrap();
    let params = ParamPair::new(-1.5, 2.25).unwrap();

    c.bench_function("ln_gini", |b| {
        b.iter(|| ln_gini(black_box(&params), black_box(&pair), &cfg).unwrap())
    });
    c.bench_function("h_jet", |b| {
        b.iter(|| h_jet(black_box(0.75), black_box(&params), black_box(&pair), &cfg).unwrap())
    });
    c.bench_function("ln_gini_quadrature", |b| {
        b.iter(|| ln_gini_quadrature(black_box(&params), black_box(&pair), &cfg).unwrap())
    });
}

fn scans(c: &mut Criterion) {
    let cfg = EvalConfig::default();
    let spec = ScanSpec {
        grid_points_per_axis: 5,
        random_samples: 200,
        ..ScanSpec::default()
    };
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("thm2_h", |b| {
        b.iter(|| gini_core::check_thm2_h(black_box(&spec), &cfg).unwrap())
    });
    group.bench_function("fd", |b| {
        b.iter(|| gini_core::fd_validate(black_box(&spec), &cfg, 1e-5).unwrap())
    });
    group.finish();
}

criterion_group!(benches, evaluation, scans);
criterion_main!(benches);
