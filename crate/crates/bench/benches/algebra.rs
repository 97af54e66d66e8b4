use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use pipqr::{decompose_ambient, min_distance_exhaustive, min_distance_via_quotient, GaloisRing};
use pipqr_bench::*;

fn galois_ring(c: &mut Criterion) {
    let r = GaloisRing::new(2, 3, 4).unwrap();
    let a = r.from_packed(0x1234 % r.size().unwrap()).unwrap();
    let b = r.from_packed(0x0f0f % r.size().unwrap()).unwrap();
    let u = r.add(&a, &r.one());
    let u = if r.is_unit(&u) { u } else { r.add(&u, &r.one()) };
    c.bench_function("gr(8,4) mul", |bench| bench.iter(|| r.mul(black_box(&a), black_box(&b))));
    c.bench_function("gr(8,4) inverse", |bench| bench.iter(|| r.inverse(black_box(&u)).unwrap()));
}

fn polynomials(c: &mut Criterion) {
    let t = x15_minus_one();
    c.bench_function("hensel x^15 - 1 over Z/8", |bench| bench.iter(|| hensel(black_box(&t))));
}

fn ambient(c: &mut Criterion) {
    let amb = z4_bicyclic();
    c.bench_function("decompose bicyclic Z/4 ambient", |bench| {
        bench.iter(|| decompose_ambient(black_box(&amb)).unwrap().summands.len())
    });
}

fn distance(c: &mut Criterion) {
    let code = z4_bicyclic_code();
    let mut group = c.benchmark_group("distance 512-word code");
    group.bench_function("exhaustive", |bench| {
        bench.iter(|| min_distance_exhaustive(black_box(&code), u64::MAX).unwrap().d)
    });
    group.bench_function("quotient", |bench| {
        bench.iter(|| min_distance_via_quotient(black_box(&code), u64::MAX).unwrap().d)
    });
    group.finish();
}

fn additive(c: &mut Criterion) {
    let code = quantum_code();
    c.bench_function("quantum params [[8,4,2]]", |bench| {
        bench.iter(|| black_box(&code).quantum_params(u64::MAX).unwrap())
    });
}

criterion_group!(benches, galois_ring, polynomials, ambient, distance, additive);
criterion_main!(benches);
