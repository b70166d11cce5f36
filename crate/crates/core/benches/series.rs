//! Criterion suite for the data-parallel kernels.
//!
//! `cargo bench` runs the rayon build; `cargo bench --no-default-features`
//! runs the sequential fallback under the same bench names, so the two
//! reports compare directly. The `dispatch` group additionally pits the
//! sequential block reducer against the rayon one inside a single build.

use casimir_core::model::{BoundaryCondition, PistonConfig, SeriesControl};
use casimir_core::oracle::{regularized_energy, Regulator};
use casimir_core::{energy_halfcylinder, energy_hemisphere, piston_force};
use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

fn bench_series(c: &mut Criterion) {
    let ctl = SeriesControl::default();
    c.bench_function("half_cylinder_energy", |b| {
        b.iter(|| {
            energy_halfcylinder(black_box(1.0), 1.0, BoundaryCondition::Dirichlet, &ctl).unwrap()
        })
    });
    c.bench_function("hemisphere_energy", |b| {
        b.iter(|| energy_hemisphere(black_box(1.0), BoundaryCondition::Dirichlet, &ctl).unwrap())
    });
}

fn bench_piston(c: &mut Criterion) {
    let ctl = SeriesControl::default();
    let cfg = PistonConfig::BoxFlatHead {
        d: 0.3,
        h: 1.0,
        l2: 1.0,
        l3: 1.0,
    };
    c.bench_function("box_piston_force", |b| {
        b.iter(|| piston_force(black_box(&cfg), BoundaryCondition::Em, &ctl).unwrap())
    });
}

fn bench_oracle(c: &mut Criterion) {
    c.bench_function("mode_sum_box", |b| {
        b.iter(|| {
            regularized_energy(
                black_box(&[0.3, 1.0, 1.0]),
                BoundaryCondition::Dirichlet,
                Regulator::Abel,
                0.05,
            )
            .unwrap()
        })
    });
}

fn bench_dispatch(c: &mut Criterion) {
    // the same reduction through both execution strategies
    let kernel = |i: usize| {
        let x = (i + 1) as f64;
        (0.1 * x).sin() / (x * x)
    };
    let mut g = c.benchmark_group("dispatch");
    g.bench_function("sequential", |b| {
        b.iter(|| casimir_core::exec::sum_blocks_seq(black_box(200_000), kernel))
    });
    #[cfg(feature = "parallel")]
    g.bench_function("rayon", |b| {
        b.iter(|| casimir_core::exec::sum_blocks_par(black_box(200_000), kernel))
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_series,
    bench_piston,
    bench_oracle,
    bench_dispatch
);
criterion_main!(benches);
