use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use molekul::primary::{molecule_elementary, PrimeSetDescriptor, PrimaryMonoidSpec};
use molekul::primes::first_primes;
use molekul::puiseux::{stable_stages, PrimePool};
use molekul::{MoleculeMode, Rational};
use molekul_bench::showcase;

fn numerical_semigroups(c: &mut Criterion) {
    let mut group = c.benchmark_group("numsgp");
    for s in showcase() {
        group.bench_function(format!("betti/{s}"), |b| b.iter(|| s.betti_elements()));
        group.bench_function(format!("molecules-enumerate/{s}"), |b| {
            b.iter(|| s.molecules(MoleculeMode::Enumerate).unwrap())
        });
        group.bench_function(format!("molecules-betti/{s}"), |b| {
            b.iter(|| s.molecules(MoleculeMode::BettiFilter).unwrap())
        });
    }
    group.finish();
}

fn stages(c: &mut Criterion) {
    let pool = PrimePool::List(first_primes(50));
    let mut group = c.benchmark_group("stages");
    group.sample_size(10);
    for k in 1..=4 {
        group.bench_with_input(BenchmarkId::from_parameter(k), &k, |b, &k| {
            b.iter(|| stable_stages(&pool, k).unwrap())
        });
    }
    group.finish();
}

fn primary(c: &mut Criterion) {
    let all = PrimeSetDescriptor::all();
    let spec = PrimaryMonoidSpec::square_minus_one(6);
    let mut group = c.benchmark_group("primary");
    for x in [Rational::new(7, 6), Rational::new(523, 2310)] {
        group.bench_with_input(BenchmarkId::new("elementary", &x), &x, |b, x| {
            b.iter(|| molecule_elementary(&all, x).unwrap())
        });
    }
    let x = Rational::new(11, 3);
    group.bench_function("general/11/3", |b| b.iter(|| spec.molecule_general(&x).unwrap()));
    group.finish();
}

criterion_group!(benches, numerical_semigroups, stages, primary);
criterion_main!(benches);
