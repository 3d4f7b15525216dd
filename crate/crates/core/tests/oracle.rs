use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wex_core::gf2q::BackendKind;
use wex_core::graph::{brute_force_kpath, gen_random};
use wex_core::kpath::{brute_force_eval, evaluate, Assignment};
use wex_core::{decide_kpath, FieldSpec, Graph, MulBackend, OracleContext};

fn ctx(kind: BackendKind, q: u32, k: usize, seed: u64) -> OracleContext {
    let spec = FieldSpec::builtin(q).unwrap();
    let be = Arc::new(MulBackend::build(kind, &spec).unwrap());
    OracleContext::new(be, k, seed).unwrap()
}

fn random_instance(rng: &mut ChaCha8Rng, max_n: usize) -> Graph {
    let n = rng.random_range(1..=max_n);
    let m = rng.random_range(0..=n * (n - 1) / 2);
    gen_random(n, m, rng.random()).unwrap()
}

#[test]
fn dp_matches_term_by_term_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let specs = [
        (BackendKind::Naive, FieldSpec::builtin(26).unwrap()),
        (BackendKind::Lookup, FieldSpec::builtin(7).unwrap()),
        (BackendKind::Clmul, FieldSpec::pentanomial64()),
    ];
    for i in 0..100 {
        let g = random_instance(&mut rng, 5);
        let k = rng.random_range(1..=4);
        let (kind, spec) = specs[i % 3];
        let be = MulBackend::build(kind, &spec).unwrap();
        let a = Assignment::random(&g, k, &spec, &mut rng);
        let want = brute_force_eval(&g, &a, &spec).unwrap();
        assert_eq!(evaluate(&g, &a, &be).value, want, "instance {i}, {kind}");
    }
}

#[test]
fn brute_force_eval_guards() {
    let spec = FieldSpec::builtin(8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let big = Graph::empty(6);
    let a = Assignment::random(&big, 2, &spec, &mut rng);
    assert!(brute_force_eval(&big, &a, &spec).is_err());
    let small = Graph::empty(3);
    let a = Assignment::random(&small, 5, &spec, &mut rng);
    assert!(brute_force_eval(&small, &a, &spec).is_err());
    let a = Assignment::random(&Graph::empty(2), 2, &spec, &mut rng);
    assert!(brute_force_eval(&small, &a, &spec).is_err());
}

#[test]
fn every_backend_gives_the_same_verdicts() {
    // Different fields give different values; only the YES/NO pattern on
    // witness-free graphs must coincide.
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let g = gen_random(12, rng.random_range(5..20), rng.random()).unwrap();
        let k = 6;
        let truth = brute_force_kpath(&g, k).unwrap().is_some();
        for (kind, q) in [
            (BackendKind::Naive, 26),
            (BackendKind::Lookup, 12),
            (BackendKind::Clmul, 64),
        ] {
            let mut c = ctx(kind, q, k, rng.random());
            let yes = decide_kpath(&g, &mut c).answer.is_yes();
            if !truth {
                assert!(!yes);
            }
        }
    }
}

#[test]
fn no_false_positives() {
    let mut rng = ChaCha8Rng::seed_from_u64(100);
    let mut found = 0;
    while found < 200 {
        let n = rng.random_range(4..=20);
        let m = rng.random_range(0..=(2 * n).min(n * (n - 1) / 2));
        let g = gen_random(n, m, rng.random()).unwrap();
        let k = rng.random_range(3..=7);
        if brute_force_kpath(&g, k).unwrap().is_some() {
            continue;
        }
        found += 1;
        for seed in 0..5 {
            let mut c = ctx(BackendKind::Lookup, 7, k, seed);
            assert!(!decide_kpath(&g, &mut c).answer.is_yes());
        }
    }
}

#[test]
fn complete_at_q20() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let mut found = 0;
    while found < 200 {
        let n = rng.random_range(4..=16);
        let m = rng.random_range(n / 2..=2 * n);
        let g = gen_random(n, m.min(n * (n - 1) / 2), rng.random()).unwrap();
        let k = rng.random_range(3..=7);
        if brute_force_kpath(&g, k).unwrap().is_none() {
            continue;
        }
        found += 1;
        let mut c = ctx(BackendKind::Naive, 20, k, rng.random());
        assert!(decide_kpath(&g, &mut c).answer.is_yes());
    }
}

#[test]
fn false_negative_rate_at_q4() {
    // the only 4-vertex path, plus an isolated vertex
    let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3)]).unwrap();
    let spec = FieldSpec::builtin(4).unwrap();
    let be = Arc::new(MulBackend::lookup(&spec).unwrap());
    let k = 4;
    let mut c = OracleContext::unchecked_bound(be, k, 77).unwrap();
    let trials = 10_000;
    let no = (0..trials)
        .filter(|_| !decide_kpath(&g, &mut c).answer.is_yes())
        .count();
    let bound = (2 * k) as f64 / 16.0;
    let sigma = (bound * (1.0 - bound) / trials as f64).sqrt();
    let rate = no as f64 / trials as f64;
    assert!(rate <= bound + 3.0 * sigma, "rate {rate}");
    assert!(no > 0, "q = 4 should miss sometimes");
}

#[test]
fn field_ops_scale_with_k() {
    let g = gen_random(100, 300, 5).unwrap();
    let ops = |k: usize| {
        let mut c = ctx(BackendKind::Lookup, 12, k, 0);
        decide_kpath(&g, &mut c).field_ops as f64
    };
    for k in 5..12 {
        let ratio = ops(k + 1) / ops(k) / ((k + 1) as f64 / k as f64);
        assert!((1.8..=2.3).contains(&ratio), "k = {k}: {ratio}");
    }
}
