use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use twofactor_core::altcycle::{find_alternating_cycle_blowup, BlowupSearch};
use twofactor_core::generate::gen_random_hamiltonian;
use twofactor_core::oracle::brute_force_two_factors_with;
use twofactor_core::pipeline::{solve_batch, PipelineConfig};
use twofactor_core::{build_auxiliary, Execution};

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn oracle(c: &mut Criterion) {
    let g = gen_random_hamiltonian(12, 0.5, 1).unwrap().graph().clone();
    let mut group = c.benchmark_group("oracle_n12");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| brute_force_two_factors_with(&g, 14, exec).unwrap())
        });
    }
    group.finish();
}

fn blowup(c: &mut Criterion) {
    let aux = build_auxiliary(gen_random_hamiltonian(120, 0.4, 2).unwrap());
    let mut group = c.benchmark_group("blowup_t2_n120");
    group.sample_size(10);
    for (name, exec) in MODES {
        let search = BlowupSearch { exec, ..Default::default() };
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| find_alternating_cycle_blowup(&aux, 2, 6, &search))
        });
    }
    group.finish();
}

fn batch(c: &mut Criterion) {
    let jobs: Vec<_> = (0..8u64)
        .map(|s| {
            let inst = Arc::new(gen_random_hamiltonian(60, 0.3, s).unwrap());
            let cfg = PipelineConfig { seed: s, ..PipelineConfig::with_target(1 + (s as usize) % 4) };
            (inst, cfg)
        })
        .collect();
    let mut group = c.benchmark_group("solve_batch_8x_n60");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| solve_batch(&jobs, exec)));
    }
    group.finish();
}

criterion_group!(benches, oracle, blowup, batch);
criterion_main!(benches);
