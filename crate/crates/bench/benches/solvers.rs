use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use hadopt_core::experiments::{example7_1, example7_2, Preset};
use hadopt_core::solvers::{
    cyclic_proximal_median, incremental_median, median_setup, stochastic_median, IndexRng, MedianProblem, RunOptions,
    StepSchedule,
};
use hadopt_core::{ExtensionPolicy, Point, Space, TreeSpace};

const ITERS: usize = 1_000;

fn setup(p: &Preset) -> (MedianProblem, Point) {
    let space = Space::tree(TreeSpace::default());
    let anchors: Vec<Point> = p.trees.iter().cloned().map(Point::from).collect();
    let x0 = Point::from(p.x0.clone());
    (median_setup(&space, &anchors, &p.weights, &x0).unwrap(), x0)
}

fn tree_medians(c: &mut Criterion) {
    let harmonic = StepSchedule::Harmonic { c: 1.0 };
    for preset in [example7_1(), example7_2()] {
        let (prob, x0) = setup(&preset);
        let opts = RunOptions::new(ITERS).f_opt(preset.f_opt).policy(ExtensionPolicy::Clamp);
        let mut group = c.benchmark_group(format!("{}_{ITERS}_iters", preset.name));
        group.bench_function("incremental", |b| {
            b.iter(|| incremental_median(black_box(&prob), &x0, Some(harmonic.clone()), &opts).unwrap())
        });
        group.bench_function("stochastic", |b| {
            b.iter(|| {
                stochastic_median(black_box(&prob), &x0, Some(harmonic.clone()), &mut IndexRng::new(42), &opts).unwrap()
            })
        });
        group.bench_function("proximal", |b| {
            b.iter(|| cyclic_proximal_median(black_box(&prob), &x0, &harmonic, &opts).unwrap())
        });
        group.finish();
    }
}

criterion_group!(benches, tree_medians);
criterion_main!(benches);
