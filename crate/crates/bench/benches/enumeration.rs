use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use dimon_bench::enumeration_cases;
use dimon_core::congruence::{enumerate, EnumerationCaps};
use dimon_core::monoid::{build_named, MonoidFamily};

fn closures(c: &mut Criterion) {
    let mut group = c.benchmark_group("closure");
    for n in [6u32, 8] {
        for family in [MonoidFamily::DI, MonoidFamily::MDI, MonoidFamily::OPDI] {
            group.bench_with_input(BenchmarkId::new(family.to_string(), n), &n, |b, &n| {
                b.iter(|| build_named(family, n).unwrap().size())
            });
        }
    }
    group.finish();
}

fn enumerations(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    group.sample_size(10);
    for n in [4u32, 5] {
        for p in enumeration_cases(n) {
            group.bench_function(&p.label, |b| {
                b.iter(|| enumerate(&p, EnumerationCaps::default()).class_count())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, closures, enumerations);
criterion_main!(benches);
