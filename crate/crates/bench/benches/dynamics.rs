use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use vqso_core::sampling::uniform_state;
use vqso_core::{fixed_point_set, iterate, jacobian, stability_at, step2, ParamSet, State2};

fn bench_step(c: &mut Criterion) {
    let p = ParamSet::new(0.37, 0.91, 0.22, 0.64).unwrap();
    let s = State2::new(0.123, 0.456).unwrap();
    c.bench_function("step2", |b| b.iter(|| step2(black_box(&p), black_box(s))));
}

fn bench_iterate(c: &mut Criterion) {
    let corner = ParamSet::new(0.5, 1.0, 0.0, 0.5).unwrap();
    let s = State2::new(0.9, 0.9).unwrap();
    c.bench_function("iterate corner family to 1e-12", |b| {
        b.iter(|| iterate(black_box(&corner), black_box(s), 1_000_000, 1e-12).unwrap())
    });

    let diagonal = ParamSet::new(0.3, 0.7, 0.3, 0.7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let starts: Vec<State2> = (0..64).map(|_| uniform_state(&mut rng)).collect();
    c.bench_function("iterate diagonal family, 64 starts", |b| {
        b.iter(|| {
            for s0 in &starts {
                iterate(black_box(&diagonal), *s0, 1_000_000, 1e-12).unwrap();
            }
        })
    });
}

fn bench_fixed_points(c: &mut Criterion) {
    let continuum = ParamSet::new(0.5, 0.5, 0.2, 0.2).unwrap();
    c.bench_function("fixed_point_set continuum", |b| {
        b.iter(|| fixed_point_set(black_box(&continuum)))
    });

    let p = ParamSet::new(0.67, 0.97, 0.896, 0.908).unwrap();
    let origin = State2::new(0.0, 0.0).unwrap();
    c.bench_function("stability_at origin", |b| {
        b.iter(|| stability_at(black_box(&p), black_box(origin)))
    });

    c.bench_function("jacobian eigenvalues", |b| {
        b.iter(|| jacobian(black_box(&p), black_box(origin)).eigenvalues())
    });
}

criterion_group!(benches, bench_step, bench_iterate, bench_fixed_points);
criterion_main!(benches);
