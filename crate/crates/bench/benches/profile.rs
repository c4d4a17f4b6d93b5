use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use num_rational::BigRational;
use psidiff::{build_word, dubickas_witnesses, kronecker_search, profile, Family, KroneckerTarget, Mode, ProfileOptions};
use psidiff_bench::{extremal, golden_silver};

fn profiles(c: &mut Criterion) {
    let (tau, theta) = golden_silver();
    let (base, omega) = extremal();
    let mut g = c.benchmark_group("profile");
    for exp in [6u32, 12, 24] {
        let limit = BigInt::from(10).pow(exp);
        g.bench_with_input(BenchmarkId::new("tau_theta_exact", exp), &limit, |b, l| {
            b.iter(|| profile(&tau, &theta, l, &ProfileOptions::default()).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("theta_omega_exact", exp), &limit, |b, l| {
            b.iter(|| profile(&base, &omega, l, &ProfileOptions::default()).unwrap())
        });
    }
    let interval = ProfileOptions {
        mode: Mode::interval(BigRational::new(1.into(), BigInt::from(10).pow(20))).unwrap(),
        window: None,
    };
    let limit = BigInt::from(10).pow(12);
    g.bench_function("tau_theta_interval_12", |b| {
        b.iter(|| profile(&tau, &theta, &limit, &interval).unwrap())
    });
    g.finish();
}

fn words_and_witnesses(c: &mut Criterion) {
    let (tau, theta) = golden_silver();
    let limit = BigInt::from(10).pow(30);
    c.bench_function("word_tau_theta_1e30", |b| b.iter(|| build_word(&tau, &theta, &limit).unwrap()));
    let n = BigInt::from(10).pow(6);
    c.bench_function("witnesses_tau_theta_1e6", |b| b.iter(|| dubickas_witnesses(&tau, &theta, &n).unwrap()));
}

fn kronecker(c: &mut Criterion) {
    let target = KroneckerTarget::Power(BigRational::new(1.into(), 2.into()));
    let eps = BigRational::new(1.into(), 100_000.into());
    c.bench_function("kronecker_half_1e-5", |b| {
        b.iter(|| kronecker_search(Family::Sqrt2, &target, &eps, 1_000_000).unwrap())
    });
}

criterion_group!(benches, profiles, words_and_witnesses, kronecker);
criterion_main!(benches);
