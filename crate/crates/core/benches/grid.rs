use criterion::{criterion_group, criterion_main, Criterion};
use twistfp::grid::{evaluate, evaluate_sequential, multiplier_grid};
use twistfp::registry;
use twistfp::twist::Direction;

fn bench_grid(c: &mut Criterion) {
    let ex = registry::load("target").unwrap();
    let points = multiplier_grid(3, 1, 4);
    let mut g = c.benchmark_group("target 1..4");
    g.sample_size(10);
    g.bench_function("sequential", |b| {
        b.iter(|| evaluate_sequential(&ex.ball, &ex.pairing, &points, Direction::Cw).unwrap())
    });
    g.bench_function("evaluate", |b| b.iter(|| evaluate(&ex.ball, &ex.pairing, &points, Direction::Cw).unwrap()));
    g.finish();
}

criterion_group!(benches, bench_grid);
criterion_main!(benches);
