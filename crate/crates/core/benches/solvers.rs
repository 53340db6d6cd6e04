//! Benchmark suite: the parallel-vs-sequential outer-loop comparison, the
//! 2^m vs 3^m engine scaling picture, and the polynomial structured solvers
//! at production size.
//!
//! The sequential helpers in `exec` stay compiled under every feature
//! configuration, so a default (`parallel`) build can measure both
//! scheduling strategies on bit-identical workloads. Build with
//! `--no-default-features` to confirm the sequential fallback matches the
//! `*_seq` numbers.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cffa_core::color_coding::{dp_colorful, AutoSbMwis};
use cffa_core::exec;
use cffa_core::reductions::{gen_cluster, gen_complement_matching, gen_random, GenParams};
use cffa_core::structured::{
    solve_cluster_two_cliques_uniform, solve_complete_graph, solve_near_complete_uniform,
};
use cffa_core::subsetconv::solve_fpt_items;
use cffa_core::oracle::subset_dp_cffa;
use cffa_core::Instance;

/// A capped instance that no coloring can satisfy, so a repetition sweep
/// always runs to its full planned length — the worst case the parallel
/// outer loop exists for.
fn hopeless_capped_instance() -> Instance {
    let params = GenParams {
        agents: 2,
        jobs: 16,
        eta: 60, // far beyond any 3-job bundle of utilities <= 9
        max_utility: 9,
        cap: Some(3),
        uniform: false,
    };
    gen_random(&params, 25, 0xBE7C).unwrap()
}

/// One Monte Carlo repetition: draw the coloring for stream `rep`, run the
/// colorful decision. Mirrors the solver's inner loop byte for byte.
fn color_attempt(inst: &Instance, rep: u64) -> Option<()> {
    let colors = inst.agent_count() * inst.bundle_cap().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    rng.set_stream(rep);
    let coloring: Vec<usize> = (0..inst.job_count())
        .map(|_| rng.gen_range(0..colors))
        .collect();
    let outcome = dp_colorful(inst, &coloring, &AutoSbMwis).unwrap();
    outcome.bundles.map(|_| ())
}

fn bench_exec_strategy(c: &mut Criterion) {
    let inst = hopeless_capped_instance();
    let reps = 48u64;
    let mut group = c.benchmark_group("exec_strategy");
    group.sample_size(10);
    group.bench_function("color_reps_parallel", |b| {
        b.iter(|| {
            assert!(exec::find_map_first(reps, |rep| color_attempt(&inst, rep)).is_none());
        })
    });
    group.bench_function("color_reps_sequential", |b| {
        b.iter(|| {
            assert!(exec::find_map_first_seq(reps, |rep| color_attempt(&inst, rep)).is_none());
        })
    });
    group.finish();
}

fn bench_engine_scaling(c: &mut Criterion) {
    let mut group = c.benchmark_group("engine_scaling");
    group.sample_size(10);
    for m in [12usize, 14, 16] {
        let params = GenParams {
            agents: 3,
            jobs: m,
            eta: 12,
            max_utility: 9,
            cap: None,
            uniform: false,
        };
        let inst = gen_random(&params, 30, 0x5CA1E).unwrap();
        group.bench_with_input(BenchmarkId::new("subsetconv", m), &inst, |b, inst| {
            b.iter(|| solve_fpt_items(inst).unwrap().verdict)
        });
        group.bench_with_input(BenchmarkId::new("subsetdp", m), &inst, |b, inst| {
            b.iter(|| subset_dp_cffa(inst).unwrap().verdict)
        });
    }
    group.finish();
}

fn bench_structured_m200(c: &mut Criterion) {
    let base = GenParams {
        agents: 40,
        jobs: 200,
        eta: 5,
        max_utility: 9,
        cap: None,
        uniform: false,
    };
    let mut uniform = base.clone();
    uniform.uniform = true;

    let complete = gen_random(&base, 100, 7).unwrap();
    let cluster = gen_cluster(&uniform, 2, 7).unwrap().0;
    let matching = gen_complement_matching(&uniform, 7).unwrap();

    let mut group = c.benchmark_group("structured_m200");
    group.bench_function("complete", |b| {
        b.iter(|| solve_complete_graph(&complete).unwrap().verdict)
    });
    group.bench_function("cluster2u", |b| {
        b.iter(|| solve_cluster_two_cliques_uniform(&cluster).unwrap().verdict)
    });
    group.bench_function("nearcomplete_u", |b| {
        b.iter(|| solve_near_complete_uniform(&matching).unwrap().verdict)
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_exec_strategy,
    bench_engine_scaling,
    bench_structured_m200
);
criterion_main!(benches);
