use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use num_complex::Complex64;

use quatred::algebra::star::commutant;
use quatred::linalg::embed::complex_embed;
use quatred::linalg::expm::expm;
use quatred::linalg::polar::polar_antiselfadjoint;
use quatred::random::{antiselfadjoint, cmatrix, frame, qmatrix, quaternion, rng};
use quatred::{qmul, StarAlgebra};

fn kernels(c: &mut Criterion) {
    let mut g = rng(1);
    let (p, q) = (quaternion(&mut g), quaternion(&mut g));
    c.bench_function("qmul", |b| b.iter(|| qmul(black_box(p), black_box(q))));

    let f = frame(&mut g);
    let t = qmatrix(&mut g, 8);
    c.bench_function("complex_embed n=8", |b| b.iter(|| complex_embed(black_box(&t), &f)));

    // the commutant is cached per algebra, so each iteration gets a fresh one
    let gens = vec![qmatrix(&mut g, 4), qmatrix(&mut g, 4)];
    c.bench_function("commutant n=4", |b| {
        b.iter_batched(
            || StarAlgebra::new(4, gens.clone()).expect("algebra"),
            |a| commutant(&a),
            BatchSize::SmallInput,
        )
    });

    let m = cmatrix(&mut g, 8, 8);
    let anti = (&m - m.adjoint()) * Complex64::new(0.5, 0.0);
    c.bench_function("expm 8x8", |b| b.iter(|| expm(black_box(&anti))));

    let h = antiselfadjoint(&mut g, 4);
    c.bench_function("polar n=4", |b| b.iter(|| polar_antiselfadjoint(black_box(&h))));
}

criterion_group!(benches, kernels);
criterion_main!(benches);
