//! Parallel vs sequential throughput on the two data-parallel hot paths:
//! Monte Carlo pipeline simulation and the exhaustive decoding oracle.
//!
//! Build with default features to let the parallel side use rayon:
//!
//! ```bash
//! cargo bench -p drs-core
//! ```

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use std::time::Duration;

use drs_core::{build, simulate, simulate_seq, FieldSpec, SmanTopology};

fn sample_construction() -> drs_core::Construction {
    let adjacency = [
        [1, 0, 0, 1, 1, 1, 1],
        [0, 1, 1, 0, 0, 1, 1],
        [0, 1, 1, 1, 1, 0, 0],
    ]
    .iter()
    .map(|row| row.iter().map(|&v| v == 1).collect())
    .collect();
    let top = SmanTopology::new(vec![3, 1, 1], 1, adjacency).unwrap();
    build(&top, &FieldSpec::with_poly(3, 0xB).unwrap()).unwrap()
}

fn bench_simulate(c: &mut Criterion) {
    let cons = sample_construction();
    let mut g = c.benchmark_group("simulate_2048_trials");
    g.bench_function("parallel", |b| {
        b.iter(|| black_box(simulate(&cons, 2048, 1, 42)));
    });
    g.bench_function("sequential", |b| {
        b.iter(|| black_box(simulate_seq(&cons, 2048, 1, 42)));
    });
    g.finish();
}

fn bench_bruteforce(c: &mut Criterion) {
    let cons = sample_construction();
    let code = cons.code();
    // a word one error away from a codeword, so the oracle scans everything
    let msg: Vec<_> = [3u16, 1, 4, 1, 5]
        .iter()
        .map(|&v| code.spec().element(v as u64).unwrap())
        .collect();
    let mut word = code.encode(&msg).unwrap();
    word[2] = code.spec().add(word[2], code.spec().alpha());
    let mut g = c.benchmark_group("bruteforce_decode_32768_messages");
    g.bench_function("parallel", |b| {
        b.iter(|| black_box(code.decode_bruteforce(&word).unwrap()));
    });
    g.bench_function("sequential", |b| {
        b.iter(|| black_box(code.decode_bruteforce_seq(&word).unwrap()));
    });
    g.finish();
}

criterion_group!(
    name = benches;
    config = Criterion::default()
        .warm_up_time(Duration::from_millis(500))
        .measurement_time(Duration::from_secs(2))
        .sample_size(20);
    targets = bench_simulate, bench_bruteforce
);
criterion_main!(benches);
