use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use critlab_core::models::{component, iw0_gl3, omega_fiber, rederive_component};
use critlab_core::numtheory::{
    compositum_poly, congruence_classes, is_totally_split_set, FieldSpec, ZPoly,
};
use critlab_core::polyalg::free_resolution;
use critlab_core::{MonomialOrder, Rat, WeylElem};
use num_traits::Zero;

fn groebner(c: &mut Criterion) {
    let ideal = iw0_gl3().ideal;
    c.bench_function("gb/iw0-grevlex", |b| {
        b.iter(|| ideal.groebner_bounded(black_box(MonomialOrder::GrevLex), None).unwrap())
    });
    let w0 = WeylElem::longest(3, 1);
    c.bench_function("gb/rederive-w0", |b| {
        b.iter(|| rederive_component(3, black_box(&w0)).unwrap())
    });
}

fn resolution(c: &mut Criterion) {
    c.bench_function("resolution/iw0", |b| {
        b.iter_with_setup(|| iw0_gl3().ideal, |ideal| free_resolution(&ideal, 6).unwrap())
    });
    let comp = component(3, &WeylElem::longest(3, 1)).unwrap();
    let origin = vec![Rat::zero(); 6];
    c.bench_function("omega-fiber/origin", |b| {
        b.iter(|| omega_fiber(&comp, black_box(&origin)).unwrap())
    });
}

fn number_theory(c: &mut Criterion) {
    let spec = FieldSpec::builtin("Qi_sqrt3_zeta7plus").unwrap();
    c.bench_function("split/Qi_sqrt3_zeta7plus-p97", |b| {
        b.iter(|| is_totally_split_set(&spec, black_box(97)).unwrap())
    });
    let f = ZPoly::parse("x^2+1").unwrap();
    let g = ZPoly::parse("x^3+x^2-4*x+1").unwrap();
    c.bench_function("compositum/deg6", |b| {
        b.iter(|| compositum_poly(black_box(&f), black_box(&g)).unwrap())
    });
    let spec = FieldSpec::builtin("Qi_cubic13").unwrap();
    c.bench_function("congruences/mod52", |b| {
        b.iter(|| congruence_classes(&spec, black_box(52), 3).unwrap())
    });
}

criterion_group!(benches, groebner, resolution, number_theory);
criterion_main!(benches);
