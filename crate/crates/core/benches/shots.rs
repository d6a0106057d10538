use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use onlinege::codes::CodeSpec;
use onlinege::decoder::Backend;
use onlinege::sim::{SimConfig, Simulation};
use std::hint::black_box;

fn shots(c: &mut Criterion) {
    let mut group = c.benchmark_group("shots");
    group.sample_size(20);
    for spec in [
        CodeSpec::Toric2d { l: 11 },
        CodeSpec::Toric2d { l: 17 },
        CodeSpec::Color666 { lx: 12, ly: 12 },
    ] {
        let sim = Simulation::new(SimConfig {
            code: spec,
            p: 0.05,
            shots: 60,
            seed: 1,
            backends: vec![Backend::Offline, Backend::Online],
        })
        .unwrap();
        group.bench_with_input(BenchmarkId::new("sequential", spec), &sim, |b, sim| {
            b.iter(|| black_box(sim.run_sequential().unwrap()))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", spec), &sim, |b, sim| {
            b.iter(|| black_box(sim.run_parallel().unwrap()))
        });
    }
    group.finish();
}

criterion_group!(benches, shots);
criterion_main!(benches);
