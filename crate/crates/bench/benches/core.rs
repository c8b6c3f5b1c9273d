use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use heiscalc_core::contact::{built_in_maps, commute_check};
use heiscalc_core::random::{random_combination, random_form, random_poly, trial_rng};
use heiscalc_core::rumin::{basis_e0, basis_j, d_second_order, dc_operator, random_class, verify_complex};
use heiscalc_core::surface::{find_characteristic_points, mobius_surface};

fn coefficients(c: &mut Criterion) {
    let mut rng = trial_rng(1, 0, 0);
    let (p, q) = (random_poly(3, 3, &mut rng), random_poly(3, 3, &mut rng));
    c.bench_function("poly mul n=3", |b| b.iter(|| black_box(&p) * black_box(&q)));
    c.bench_function("poly compose n=1", |b| {
        let f: Vec<_> = (0..3).map(|i| random_poly(1, 2, &mut trial_rng(1, 1, i))).collect();
        let g = random_poly(1, 3, &mut rng);
        b.iter(|| g.compose(black_box(&f)).unwrap())
    });
}

fn forms(c: &mut Criterion) {
    let a = random_form(3, 3, 3, &mut trial_rng(2, 0, 0));
    c.bench_function("exterior derivative n=3 k=3", |b| b.iter(|| black_box(&a).exterior_derivative()));
    c.bench_function("basis J n=4 k=5 (cached)", |b| b.iter(|| basis_j(5, 4).unwrap().len()));
}

fn operators(c: &mut Criterion) {
    let cls = random_class(2, 2, 3, &mut trial_rng(3, 0, 0));
    c.bench_function("D n=2", |b| b.iter(|| d_second_order(black_box(&cls)).unwrap()));
    let e0 = basis_e0(1, 2).unwrap();
    let a = random_combination(2, 1, e0.elements(), 3, &mut trial_rng(3, 1, 0));
    c.bench_function("d_c n=2 k=1", |b| b.iter(|| dc_operator(black_box(&a)).unwrap()));
    c.bench_function("verify_complex n=2, 10 trials", |b| b.iter(|| verify_complex(2, 10, 42, 3).unwrap()));
    let (_, f) = built_in_maps(2, 42).unwrap().remove(5);
    c.bench_function("commute n=2 k=2, 5 trials", |b| b.iter(|| commute_check(&f, 2, 5, 42, 3).unwrap()));
}

fn surfaces(c: &mut Criterion) {
    let s = mobius_surface(0.2, 0.15).unwrap();
    let mut g = c.benchmark_group("mobius");
    g.sample_size(10);
    g.bench_function("scan 1024x512", |b| b.iter(|| find_characteristic_points(&s, (1024, 512), 1e-10).unwrap()));
    g.finish();
}

criterion_group!(benches, coefficients, forms, operators, surfaces);
criterion_main!(benches);
