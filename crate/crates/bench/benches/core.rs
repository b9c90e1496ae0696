use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use m2causal::fieldcheck::holomorphy_residual;
use m2causal::propertime::proper_time_accelerated;
use m2causal::SplitComplex;
use m2causal_bench::{ctx, grid, mw, perturbed, plane_map, rindler, walker};

fn eval(c: &mut Criterion) {
    let m = mw(perturbed());
    let z = SplitComplex::new(0.3, -0.2);
    c.bench_function("mw_eval", |b| b.iter(|| m.eval(black_box(z)).unwrap()));
    c.bench_function("mw_eval_geometric", |b| b.iter(|| m.eval_geometric(black_box(z)).unwrap()));
}

fn radar_inverse(c: &mut Criterion) {
    let m = mw(perturbed());
    let e = m.eval(SplitComplex::new(0.3, -0.2)).unwrap();
    c.bench_function("radar_inverse", |b| b.iter(|| m.radar_inverse(black_box(e)).unwrap()));
}

fn residual(c: &mut Criterion) {
    let f = plane_map(perturbed());
    let g = grid(41);
    c.bench_function("holomorphy_residual_41x41", |b| {
        b.iter(|| holomorphy_residual(black_box(&f), &g, false).unwrap())
    });
}

fn proper_time(c: &mut Criterion) {
    let g = rindler();
    let traj = walker(1.0);
    c.bench_function("proper_time_accelerated", |b| {
        b.iter(|| proper_time_accelerated(&g, black_box(&traj), ctx(), 1e-10).unwrap())
    });
}

criterion_group!(benches, eval, radar_inverse, residual, proper_time);
criterion_main!(benches);
