//! One worker against the default pool on the checks that fan out.

use criterion::{criterion_group, criterion_main, Criterion};
use qfano_core::exclusion::exclusion_suite;
use qfano_core::family::{verify_condition, CheckOptions, Triplet};
use qfano_core::groebner::GroebnerConfig;
use qfano_core::links::verify_link_suite;
use qfano_core::poly::Field;

fn triplet(field: Field) -> Triplet {
    Triplet::parse(
        field,
        "z^2 + 3*z*x0^3 - 2*z*x1^3 - 2*x0^5*x1 + 7*x0^3*x1^3 + x1^6 + 5*x0^6",
        "z^2 - z*x1^3 + 4*z*x0^2*x1 + 3*x0^6 + x0*x1^5 - 6*x0^2*x1^4",
        "z^2*x0*x1 - 3*z^2*x1^2 + 5*z*x1^5 + 2*z*x0^4*x1 + x0^8 - x1^8 + 9*x0^3*x1^5",
    )
    .unwrap()
}

fn pools(c: &mut Criterion) {
    let single = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let default = rayon::ThreadPoolBuilder::new().build().unwrap();
    let q = triplet(Field::Rational);
    let fp = triplet(Field::prime(1009).unwrap());
    let opts = CheckOptions::default();
    let cfg = GroebnerConfig::default();

    let mut g = c.benchmark_group("condition");
    g.sample_size(10);
    g.bench_function("one_thread", |b| b.iter(|| single.install(|| verify_condition(&q, &opts))));
    g.bench_function("default_pool", |b| b.iter(|| default.install(|| verify_condition(&q, &opts))));
    g.finish();

    let mut g = c.benchmark_group("links");
    g.sample_size(10);
    g.bench_function("one_thread", |b| b.iter(|| single.install(|| verify_link_suite(&fp, &cfg).unwrap())));
    g.bench_function("default_pool", |b| b.iter(|| default.install(|| verify_link_suite(&fp, &cfg).unwrap())));
    g.finish();

    let mut g = c.benchmark_group("exclusion");
    g.sample_size(10);
    g.bench_function("one_thread", |b| b.iter(|| single.install(|| exclusion_suite(&fp, 1, 2, &cfg).unwrap())));
    g.bench_function("default_pool", |b| b.iter(|| default.install(|| exclusion_suite(&fp, 1, 2, &cfg).unwrap())));
    g.finish();
}

criterion_group!(benches, pools);
criterion_main!(benches);
