use criterion::{criterion_group, criterion_main, Criterion};
use wex_bench::{context, spider, standard_backends};
use wex_core::decide_kpath;

fn decide(c: &mut Criterion) {
    let k = 8;
    // longest path has k - 1 vertices, so every call does the full work
    let g = spider(k - 1, 200);
    let mut group = c.benchmark_group("decide_k8_n200");
    group.sample_size(20);
    for (name, be) in standard_backends() {
        let mut ctx = context(&be, k);
        group.bench_function(name, |b| b.iter(|| decide_kpath(&g, &mut ctx)));
    }
    group.finish();
}

criterion_group!(benches, decide);
criterion_main!(benches);
