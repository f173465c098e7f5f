use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use minorforge::exec::Execution;
use minorforge::generators::gen_tfp_complement;
use minorforge::montecarlo::pairing_marginals;
use minorforge::pipeline::{preconditions, LambdaPolicy, PipelineConfig};
use minorforge::rng::trial_rng;

fn modes() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Auto)]
}

fn marginals(c: &mut Criterion) {
    let mut group = c.benchmark_group("pairing_marginals");
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::new(name, 20_000), |b| {
            b.iter(|| pairing_marginals(black_box(40), 20_000, 1, exec).unwrap())
        });
    }
    group.finish();
}

fn pipeline_batch(c: &mut Criterion) {
    let g = gen_tfp_complement(100, &mut trial_rng(0, 0));
    let cfg = PipelineConfig {
        lambda_policy: LambdaPolicy::Clamped,
        ..PipelineConfig::default()
    };
    let prepared = preconditions(&g, &cfg).unwrap();
    let mut group = c.benchmark_group("run_batch");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_function(BenchmarkId::new(name, 16), |b| {
            b.iter(|| prepared.run_batch(black_box(16), exec))
        });
    }
    group.finish();
}

criterion_group!(benches, marginals, pipeline_batch);
criterion_main!(benches);
