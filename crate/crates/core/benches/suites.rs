//! Sequential vs rayon execution on the sample suites and window assembly.
//! Without the `parallel` feature both arms run the same sequential loop.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use stackcalc::algebroid::examples::molino;
use stackcalc::cohomology::{AlgebroidWindows, GroupoidWindows};
use stackcalc::groupoid::gallery::build_example;
use stackcalc::suites::{module_suite, GroupoidPool};
use stackcalc::Exec;

const ARMS: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn module(c: &mut Criterion) {
    let g = build_example("submersion-R2-R").unwrap();
    let mut group = c.benchmark_group("module suite");
    group.sample_size(10);
    for (name, exec) in ARMS {
        let pool = GroupoidPool::new(&g, exec);
        group.bench_function(BenchmarkId::new(name, "submersion-R2-R"), |b| {
            b.iter(|| module_suite(&pool, 8, 7, exec))
        });
    }
    group.finish();
}

fn windows(c: &mut Criterion) {
    let g = build_example("z2-reflection").unwrap();
    let a = molino();
    let mut group = c.benchmark_group("windows");
    group.sample_size(10);
    for (name, exec) in ARMS {
        group.bench_function(BenchmarkId::new(name, "z2-reflection H^0, d=4"), |b| {
            b.iter(|| GroupoidWindows::new(&g, 4, exec).h0())
        });
        group.bench_function(BenchmarkId::new(name, "molino H^0, d=4"), |b| {
            b.iter(|| AlgebroidWindows::new(&a, 4, exec).h0())
        });
    }
    group.finish();
}

criterion_group!(benches, module, windows);
criterion_main!(benches);
