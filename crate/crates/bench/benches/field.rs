use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion, Throughput};
use wex_bench::{operands, spec, standard_backends};
use wex_core::gf2q::{build_lookup_table, MAX_LOOKUP_Q};
use wex_core::MulBackend;

const PAIRS: usize = 4096;

fn backends(c: &mut Criterion) {
    let mut g = c.benchmark_group("mul");
    g.throughput(Throughput::Elements(PAIRS as u64));
    for (name, be) in standard_backends() {
        let ops = operands(&be.spec(), PAIRS, 1);
        g.bench_function(name, |b| {
            b.iter(|| {
                ops.iter()
                    .fold(0u64, |acc, &(x, y)| acc ^ be.mul(black_box(x), y).0)
            })
        });
    }
    g.finish();
}

fn lookup_by_q(c: &mut Criterion) {
    let mut g = c.benchmark_group("mul_lookup_q");
    g.throughput(Throughput::Elements(PAIRS as u64));
    for q in 4..=MAX_LOOKUP_Q {
        let be = MulBackend::Lookup(build_lookup_table(&spec(q)).unwrap());
        let ops = operands(&spec(q), PAIRS, 2);
        g.bench_function(format!("q{q}"), |b| {
            b.iter(|| {
                ops.iter()
                    .fold(0u64, |acc, &(x, y)| acc ^ be.mul(black_box(x), y).0)
            })
        });
    }
    g.finish();
}

criterion_group!(benches, backends, lookup_by_q);
criterion_main!(benches);
