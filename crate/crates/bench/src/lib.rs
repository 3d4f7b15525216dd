//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wex_core::gf2q::random_element;
use wex_core::graph::gen_spider;
use wex_core::{
    BackendKind, FieldElement, FieldSpec, Graph, MulBackend, OracleContext, SpiderSpec,
};

/// The three configurations compared throughout: naive over GF(2^26),
/// lookup over GF(2^7), clmul over GF(2^64).
pub fn standard_backends() -> Vec<(String, Arc<MulBackend>)> {
    [
        (BackendKind::Naive, 26),
        (BackendKind::Lookup, 7),
        (BackendKind::Clmul, 64),
    ]
    .into_iter()
    .map(|(kind, q)| {
        let be = MulBackend::build(kind, &spec(q)).expect("supported field");
        (format!("{kind}/q{q}"), Arc::new(be))
    })
    .collect()
}

pub fn spec(q: u32) -> FieldSpec {
    if q == 64 {
        FieldSpec::pentanomial64()
    } else {
        FieldSpec::builtin(q).expect("shipped field")
    }
}

/// `len` uniform operand pairs.
pub fn operands(spec: &FieldSpec, len: usize, seed: u64) -> Vec<(FieldElement, FieldElement)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len)
        .map(|_| {
            (
                random_element(&mut rng, spec),
                random_element(&mut rng, spec),
            )
        })
        .collect()
}

/// Unique-witness spider on `n` vertices around a `k`-path.
pub fn spider(k: usize, n: usize) -> Graph {
    gen_spider(SpiderSpec::unique(k, n), 1)
        .expect("feasible spider")
        .graph
}

pub fn context(backend: &Arc<MulBackend>, k: usize) -> OracleContext {
    OracleContext::new(backend.clone(), k, 7).expect("valid context")
}
