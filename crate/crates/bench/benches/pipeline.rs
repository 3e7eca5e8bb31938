use criterion::{black_box, criterion_group, criterion_main, Criterion};
use milnorsig_core::corpus::Family;
use milnorsig_core::germ::{crosscap_number, double_curve_by_resultant, triple_point_number};
use milnorsig_core::localring::{milnor_number, quotient_dim, LocalIdeal};
use milnorsig_core::milnorsig::{analyze, signature_of_form};
use milnorsig_core::mpoly::{parse_poly, NumberField, PolyRing};

fn full_pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze");
    for family in [Family::CrossCap, Family::S(5), Family::C(6), Family::F4, Family::H(5), Family::Corank2] {
        let germ = family.germ();
        group.bench_function(family.to_string(), |b| b.iter(|| analyze(black_box(&germ)).unwrap()));
    }
    group.finish();
}

fn stages(c: &mut Criterion) {
    let h5 = Family::H(5).germ();
    let s5 = Family::S(5).germ();
    c.bench_function("crosscap_number/S5", |b| b.iter(|| crosscap_number(black_box(&s5)).unwrap()));
    c.bench_function("resultant_curve/H5", |b| b.iter(|| double_curve_by_resultant(black_box(&h5)).unwrap()));
    c.bench_function("triple_points/H5", |b| b.iter(|| triple_point_number(black_box(&h5)).unwrap()));
}

fn local_algebra(c: &mut Criterion) {
    let ring = PolyRing::new(&["u", "v"], NumberField::rationals());
    let curve = parse_poly("(u^2 - v^3)*(u^3 - v^2)*(u - v)", &ring).unwrap();
    c.bench_function("milnor_number/three_branches", |b| b.iter(|| milnor_number(black_box(&curve)).unwrap()));
    let gens = ["u^5 + u*v^3", "v^4 + u^2*v^2"].map(|s| parse_poly(s, &ring).unwrap()).to_vec();
    let ideal = LocalIdeal::new(gens).unwrap();
    c.bench_function("quotient_dim/two_generators", |b| b.iter(|| quotient_dim(black_box(&ideal)).unwrap()));
}

fn signatures(c: &mut Criterion) {
    let m: Vec<Vec<i64>> = (0..8)
        .map(|i| (0..8).map(|j| ((i * 7 + j * 7 + i * j) % 11) as i64 - 5).collect())
        .collect();
    c.bench_function("signature_of_form/8x8", |b| b.iter(|| signature_of_form(black_box(&m))));
}

criterion_group!(benches, full_pipeline, stages, local_algebra, signatures);
criterion_main!(benches);
