use criterion::{black_box, criterion_group, criterion_main, Criterion};
use ers_bench::{combination, rook_mate_in_two};
use ers_core::oracle::{alphabeta_value, certify_mate};
use ers_core::search::{ers_search, SchedulerKind, SearchParams};

fn bench_search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    let p = combination();
    let continuous = SearchParams::new(SchedulerKind::Continuous, 16.0);
    group.bench_function("combination/continuous/16", |b| {
        b.iter(|| ers_search(black_box(&p), &continuous).unwrap())
    });
    let categorical = SearchParams::new(SchedulerKind::Categorical, 12.0);
    group.bench_function("combination/categorical/12", |b| {
        b.iter(|| ers_search(black_box(&p), &categorical).unwrap())
    });
    let uniform = SearchParams::fixed_depth(3);
    group.bench_function("combination/uniform/3", |b| b.iter(|| ers_search(black_box(&p), &uniform).unwrap()));
    group.bench_function("combination/oracle-alphabeta/3", |b| b.iter(|| alphabeta_value(black_box(&p), 3)));
    group.finish();
}

fn bench_certify(c: &mut Criterion) {
    let p = rook_mate_in_two();
    c.bench_function("certify_mate/rook-mate-in-two", |b| b.iter(|| certify_mate(black_box(&p), 3)));
}

criterion_group!(benches, bench_search, bench_certify);
criterion_main!(benches);
