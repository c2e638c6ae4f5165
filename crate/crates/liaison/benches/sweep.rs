//! Parallel vs sequential throughput of the sweep and oracle engines.
//!
//! Without the `parallel` feature both arms run the sequential path, so the
//! comparison degenerates to noise; run with default features to see the
//! rayon speedup.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use liaison::bounds::{sweep, Family, OracleConfig, SweepConfig};

fn arithmetic_sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("collinear-arithmetic");
    group.sample_size(10);
    for parallel in [false, true] {
        let label = if parallel { "parallel" } else { "sequential" };
        group.bench_with_input(
            BenchmarkId::new("n3-7_dmax9", label),
            &parallel,
            |b, &parallel| {
                b.iter(|| {
                    let report = sweep(&SweepConfig {
                        family: Family::Collinear,
                        n_min: 3,
                        n_max: 7,
                        dmax: 9,
                        oracle: None,
                        parallel,
                    });
                    assert!(report.clean());
                    report.scenarios_checked
                })
            },
        );
    }
    group.finish();
}

fn oracle_sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("collinear-oracle");
    group.sample_size(10);
    for parallel in [false, true] {
        let label = if parallel { "parallel" } else { "sequential" };
        group.bench_with_input(
            BenchmarkId::new("n3_dmax3_all", label),
            &parallel,
            |b, &parallel| {
                b.iter(|| {
                    let report = sweep(&SweepConfig {
                        family: Family::Collinear,
                        n_min: 3,
                        n_max: 3,
                        dmax: 3,
                        oracle: Some(OracleConfig { prime: 32003, seed: 1, density: 1 }),
                        parallel,
                    });
                    assert!(report.clean());
                    report.oracle_instances
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, arithmetic_sweeps, oracle_sweeps);
criterion_main!(benches);
