use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use ghzppt::{classify, enumerate_bipartitions, is_ppt, is_ppt_dense};
use ghzppt_bench::{workload, ANALYTIC_SIZES, DENSE_SIZES};

fn bench_analytic_classify(c: &mut Criterion) {
    let mut group = c.benchmark_group("analytic_classify");
    group.sample_size(10);
    for n in ANALYTIC_SIZES {
        let state = workload(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &state, |b, s| {
            b.iter(|| classify(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn bench_single_partition(c: &mut Criterion) {
    let mut group = c.benchmark_group("single_partition");
    group.sample_size(10);
    for n in DENSE_SIZES {
        let state = workload(n);
        let split = enumerate_bipartitions(n).unwrap()[0];
        group.bench_with_input(BenchmarkId::new("analytic", n), &state, |b, s| {
            b.iter(|| is_ppt(black_box(s), split).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("dense", n), &state, |b, s| {
            b.iter(|| is_ppt_dense(black_box(s), split).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, bench_analytic_classify, bench_single_partition);
criterion_main!(benches);
