use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use intdel_bench::{bench_options, instance, path_instance};
use intdel_core::{solve, GraphClass};

fn by_width(c: &mut Criterion) {
    let opts = bench_options(Some(1_000_000));
    for class in GraphClass::ALL {
        let mut group = c.benchmark_group(format!("partial-ktree-{class}"));
        group.sample_size(10);
        for k in 1..=2 {
            let inst = instance(30, k, 5);
            group.bench_with_input(BenchmarkId::from_parameter(k), &inst, |b, inst| {
                b.iter(|| solve(&inst.graph, &inst.ntd, class, &opts).expect("within the state limit"))
            });
        }
        group.finish();
    }
}

fn paths(c: &mut Criterion) {
    let opts = bench_options(None);
    let mut group = c.benchmark_group("path-interval");
    group.sample_size(10);
    for n in [100, 1000] {
        let inst = path_instance(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| solve(&inst.graph, &inst.ntd, GraphClass::Interval, &opts).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, by_width, paths);
criterion_main!(benches);
