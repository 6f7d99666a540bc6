use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use perikit::torus::catalog::unit_chi_extension;
use perikit::weyl::{census, enumerate_weyl, EnumerationOptions};
use perikit::{Execution, Family, RootSystemType};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn options(exec: Execution) -> EnumerationOptions {
    EnumerationOptions {
        exec,
        ..Default::default()
    }
}

fn weyl_enumeration(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate_weyl");
    group.sample_size(10);
    for t in [
        RootSystemType::exceptional(Family::F4),
        RootSystemType::b(6),
        RootSystemType::exceptional(Family::E6),
    ] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, t.name()), &t, |b, t| {
                b.iter(|| enumerate_weyl(black_box(t), &options(exec)).unwrap())
            });
        }
    }
    group.finish();
}

fn weyl_census(c: &mut Criterion) {
    let mut group = c.benchmark_group("census");
    group.sample_size(10);
    for t in [
        RootSystemType::exceptional(Family::F4),
        RootSystemType::exceptional(Family::E6),
    ] {
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, t.name()), &t, |b, t| {
                b.iter(|| census(black_box(t), &options(exec)).unwrap())
            });
        }
    }
    group.finish();
}

fn component_sampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("sample_component_orders");
    let ext = unit_chi_extension(5, 10).unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "rank4_m10_x256"), |b| {
            b.iter(|| {
                ext.sample_component_orders(1, black_box(256), 36, 7, exec)
                    .unwrap()
            })
        });
    }
    group.finish();
}

criterion_group!(benches, weyl_enumeration, weyl_census, component_sampling);
criterion_main!(benches);
