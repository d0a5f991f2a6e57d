use criterion::{criterion_group, criterion_main, Criterion};
use sce_core::diode::{self, potential_profile};
use sce_core::lattice::{self, ArrayModel, FieldPoint, LatticeGeometry, Truncation};
use sce_core::{oracle, EmissionModel};
use std::hint::black_box;

fn diode_solvers(c: &mut Criterion) {
    c.bench_function("universal_j", |b| {
        b.iter(|| diode::universal_j(black_box(0.37)).unwrap())
    });
    c.bench_function("solve_fowler_nordheim", |b| {
        b.iter(|| {
            diode::solve(black_box(EmissionModel::FowlerNordheim { a: 40.0, b: 6.0 })).unwrap()
        })
    });
    let state = diode::solve(EmissionModel::Quadratic { a: 1.0 }).unwrap();
    c.bench_function("potential_profile", |b| {
        b.iter(|| potential_profile(&state, black_box(0.4)).unwrap())
    });
    c.bench_function("shoot", |b| {
        b.iter(|| oracle::shoot(black_box(0.5), 0.2).unwrap())
    });
}

fn lattice_sums(c: &mut Criterion) {
    let p = FieldPoint::new(0.2, 0.1, 1.0);
    let smooth = LatticeGeometry::monopole(10.0, 20.0).unwrap();
    let sharp = smooth.with_truncation(Truncation::SharpDisk);
    c.bench_function("field_smooth_m20", |b| {
        b.iter(|| lattice::monopole_field_z(&smooth, black_box(&p)).unwrap())
    });
    c.bench_function("field_sharp_m20", |b| {
        b.iter(|| lattice::monopole_field_z(&sharp, black_box(&p)).unwrap())
    });
    c.bench_function("ripple_m20", |b| {
        b.iter(|| lattice::ripple_metrics(&smooth, black_box(1.0), ArrayModel::Monopole).unwrap())
    });
}

criterion_group!(benches, diode_solvers, lattice_sums);
criterion_main!(benches);
