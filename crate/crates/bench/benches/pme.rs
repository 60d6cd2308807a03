use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use minoreq::{minimal_cut, pit_check, pme_check, FieldSpec};
use minoreq_bench::{equivalent_pair, pencil, planted};

fn pme(c: &mut Criterion) {
    let mut group = c.benchmark_group("pme_check");
    group.sample_size(10);
    for f in [FieldSpec::Rational, FieldSpec::prime(1_000_003).unwrap()] {
        for n in [6, 10, 16] {
            let (a, b) = equivalent_pair(&f, n, n as u64);
            group.bench_with_input(BenchmarkId::new(f.to_string(), n), &(a, b), |bench, (a, b)| {
                bench.iter(|| pme_check(a, b).unwrap())
            });
        }
    }
    group.finish();
}

fn cuts(c: &mut Criterion) {
    let mut group = c.benchmark_group("minimal_cut");
    let f = FieldSpec::Rational;
    for n in [8, 16, 24] {
        let a = planted(&f, n, 100 + n as u64);
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |bench, a| {
            bench.iter(|| minimal_cut(a).unwrap())
        });
    }
    group.finish();
}

fn pit(c: &mut Criterion) {
    let mut group = c.benchmark_group("pit_check");
    group.sample_size(10);
    let f = FieldSpec::Rational;
    for (n, m) in [(2, 4), (3, 6)] {
        let p = pencil(&f, n, m, 7);
        group.bench_with_input(BenchmarkId::new("homogeneous", format!("{n}x{m}")), &p, |bench, p| {
            bench.iter(|| pit_check(p, p).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, pme, cuts, pit);
criterion_main!(benches);
