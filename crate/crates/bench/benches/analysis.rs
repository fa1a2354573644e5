use criterion::{black_box, criterion_group, criterion_main, Criterion};
use exflex::fixtures;
use exflex::symmetry::block_decompose;
use exflex::{
    analyze, finite_flex_test, hyperplane_pinning, infinitesimal_analysis, linear_push, AnalysisOptions,
    PinningSpec,
};

fn rigidity(c: &mut Criterion) {
    let mut group = c.benchmark_group("infinitesimal_analysis");
    for (name, f, pin) in fixtures::catalogue() {
        group.bench_function(name, |b| b.iter(|| infinitesimal_analysis(black_box(&f), &pin, 1e-9).unwrap()));
    }
    group.finish();
}

fn blocks(c: &mut Criterion) {
    let (cube_pin, spec) = hyperplane_pinning(&fixtures::cube()).unwrap();
    let cube = fixtures::cube().with_active(spec.active).unwrap();
    let mut group = c.benchmark_group("block_decompose");
    group.bench_function("prism", |b| {
        let f = fixtures::prism();
        b.iter(|| block_decompose(black_box(&f), &PinningSpec::none()).unwrap())
    });
    group.bench_function("two_fold_prism", |b| {
        let f = fixtures::two_fold_prism();
        b.iter(|| block_decompose(black_box(&f), &PinningSpec::none()).unwrap())
    });
    group.bench_function("cube_pinned", |b| b.iter(|| block_decompose(black_box(&cube), &cube_pin).unwrap()));
    group.finish();
}

fn finite_flex(c: &mut Criterion) {
    let mut group = c.benchmark_group("finite_flex_test");
    group.sample_size(20);
    let prism = fixtures::prism();
    group.bench_function("prism", |b| {
        b.iter(|| finite_flex_test(black_box(&prism), &PinningSpec::none(), 0, 10, 0, 1e-9).unwrap())
    });
    let cycle = fixtures::cycle_of_triangles();
    group.bench_function("cycle_of_triangles", |b| {
        b.iter(|| finite_flex_test(black_box(&cycle), &PinningSpec::none(), 0, 10, 0, 1e-9).unwrap())
    });
    group.finish();
}

fn push(c: &mut Criterion) {
    let f = fixtures::k33();
    let mut group = c.benchmark_group("linear_push");
    group.sample_size(20);
    for (name, other, coord) in [("k33_adjacent", "b1", 0), ("k33_nonadjacent", "a2", 1)] {
        let pin = fixtures::k33_pin(&f, other, coord);
        group.bench_function(name, |b| b.iter(|| linear_push(black_box(&f), &pin, 0, 1000, 1e-9).unwrap()));
    }
    group.finish();
}

fn full_report(c: &mut Criterion) {
    let (f, pin) = fixtures::prism_pinned();
    c.bench_function("analyze/prism_pinned", |b| {
        b.iter(|| analyze(black_box(&f), &pin, AnalysisOptions::default()).unwrap())
    });
}

criterion_group!(benches, rigidity, blocks, finite_flex, push, full_report);
criterion_main!(benches);
