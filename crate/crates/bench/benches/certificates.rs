use criterion::{criterion_group, criterion_main, Criterion};

use cliquetop::{certify_pi1_nontrivial, garland_scan, is_sparse, sample_knp, Rational, Seed};

fn bench_certificates(c: &mut Criterion) {
    let sparse = sample_knp(60, 60f64.powf(-0.6), Seed(11)).unwrap();
    c.bench_function("is_sparse n=60 m=8", |b| {
        b.iter(|| is_sparse(&sparse, Rational::new(7, 20), 8, 0).unwrap())
    });
    c.bench_function("certify n=60", |b| b.iter(|| certify_pi1_nontrivial(&sparse).unwrap()));

    let dense = sample_knp(100, 0.3, Seed(12)).unwrap();
    c.bench_function("garland_scan n=100 p=0.3", |b| b.iter(|| garland_scan(&dense, 0.5)));
}

criterion_group!(benches, bench_certificates);
criterion_main!(benches);
