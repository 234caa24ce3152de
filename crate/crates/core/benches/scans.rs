use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use skewcodes::algebra::zero_divisor_by_rank;
use skewcodes::code::{CodeSpec, SpreadSet};
use skewcodes::corpus::{instance_f8, instance_f9};
use skewcodes::field::Fp;
use skewcodes::par::Exec;
use skewcodes::rank::{min_distance, DistanceMode, DEFAULT_BUDGET};

fn modes() -> Vec<(&'static str, Exec)> {
    #[cfg_attr(not(feature = "parallel"), allow(unused_mut))]
    let mut v = vec![("sequential", Exec::Sequential)];
    #[cfg(feature = "parallel")]
    v.push(("parallel", Exec::Parallel));
    v
}

fn specs() -> Vec<(&'static str, CodeSpec<Fp>)> {
    let f9 = instance_f9().with_nu("1").build_spec(Fp::new(3)).unwrap();
    let f8 = instance_f8()
        .with_l(2)
        .with_nu("1")
        .build_spec(Fp::new(2))
        .unwrap();
    vec![("f9_m3", f9), ("f8_l2", f8)]
}

fn distance(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_distance");
    group.sample_size(10);
    for (name, spec) in specs() {
        let ss = SpreadSet::new(&spec).unwrap();
        for (mode, exec) in modes() {
            group.bench_with_input(BenchmarkId::new(mode, name), &exec, |b, &exec| {
                b.iter(|| {
                    min_distance(
                        black_box(&spec),
                        Some(&ss),
                        DistanceMode::Both,
                        DEFAULT_BUDGET,
                        exec,
                    )
                    .unwrap()
                })
            });
        }
    }
    group.finish();
}

fn zero_divisors(c: &mut Criterion) {
    let mut group = c.benchmark_group("zero_divisor_scan");
    group.sample_size(10);
    let spec = instance_f9().with_nu("1").build_spec(Fp::new(3)).unwrap();
    let ss = SpreadSet::new(&spec).unwrap();
    for (mode, exec) in modes() {
        group.bench_function(mode, |b| {
            b.iter(|| zero_divisor_by_rank(black_box(&ss), DEFAULT_BUDGET, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, distance, zero_divisors);
criterion_main!(benches);
