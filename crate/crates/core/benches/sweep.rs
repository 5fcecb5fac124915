use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;
use timetrap::suites::run_all;
use timetrap::trace::{momentum_grid, sweep};
use timetrap::trapdesign::{design_trap, Branch};
use timetrap::{Execution, Spin};

fn bench_sweep(c: &mut Criterion) {
    let design = design_trap(1.0, 3.0, Branch::Plus, 2, 2).unwrap();
    let schedule = design.schedule();
    let grid = momentum_grid(design.p - 0.2, design.p + 0.2, 4096).unwrap();
    let mut group = c.benchmark_group("sweep");
    for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| sweep(&schedule, 1.0, Spin::Up, black_box(&grid), exec).unwrap())
        });
    }
    group.finish();
}

fn bench_verify(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify");
    group.sample_size(10);
    for (name, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| run_all(black_box(0), exec))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_sweep, bench_verify);
criterion_main!(benches);
