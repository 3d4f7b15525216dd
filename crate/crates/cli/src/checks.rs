//! Correctness checks shared by `wex selftest` and the acceptance suite.
//! Each returns a one-line summary on success and the first failure
//! otherwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wex_core::extract::sim::{FlakyOracle, PlantedFamily};
use wex_core::extract::{bisect_query_bound, las_vegas_query_bound};
use wex_core::gf2q::{
    build_lookup_table, mul_naive, random_element, reduce_pentanomial64, reference,
    verify_primitive, FieldElement, MAX_LOOKUP_Q,
};
use wex_core::graph::{brute_force_kpath, gen_random};
use wex_core::kpath::{brute_force_eval, decide_kpath, evaluate, Assignment};
use wex_core::{extract_bisect, extract_las_vegas, BackendKind, FieldSpec, Graph, MulBackend};

use crate::harness::{field_spec, OracleSetup};

pub type CheckResult = Result<String, String>;

/// Field axioms over every element (pairs and triples) of GF(2^q) with the
/// naive multiplier, plus primitivity of the shipped polynomial.
pub fn field_axioms(qs: impl IntoIterator<Item = u32>) -> CheckResult {
    let mut triples = 0u64;
    let mut fields = Vec::new();
    for q in qs {
        let spec = FieldSpec::builtin(q).map_err(|e| e.to_string())?;
        let size = 1u64 << q;
        let mul = |a: u64, b: u64| mul_naive(FieldElement(a), FieldElement(b), &spec).0;
        if verify_primitive(&spec) != Ok(true) {
            return Err(format!("q = {q}: shipped polynomial is not primitive"));
        }
        for a in 0..size {
            if mul(a, 1) != a || mul(a, 0) != 0 {
                return Err(format!("q = {q}: identity or zero fails at {a}"));
            }
            let mut seen = vec![false; size as usize];
            for b in 0..size {
                let ab = mul(a, b);
                if ab != mul(b, a) {
                    return Err(format!("q = {q}: {a} * {b} not commutative"));
                }
                seen[ab as usize] = true;
                for c in 0..size {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(format!("q = {q}: ({a} {b} {c}) not associative"));
                    }
                    if mul(a, b ^ c) != ab ^ mul(a, c) {
                        return Err(format!("q = {q}: ({a} {b} {c}) not distributive"));
                    }
                }
                triples += size;
            }
            // a != 0 has an inverse iff b -> ab is onto
            if a != 0 && seen.iter().any(|s| !s) {
                return Err(format!("q = {q}: {a} has no inverse"));
            }
        }
        fields.push(q);
    }
    Ok(format!("fields {fields:?}, {triples} triples"))
}

/// Lookup against naive on every pair for `q <= exhaustive_max`, on
/// `pairs_mid` random pairs for the remaining lookup fields, and clmul
/// against naive on `pairs_64` random pairs of GF(2^64). `corrupt` damages
/// one entry of the GF(2^7) table first.
pub fn backend_equivalence(
    exhaustive_max: u32,
    pairs_mid: usize,
    pairs_64: usize,
    corrupt: bool,
    seed: u64,
) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut compared = 0u64;
    for q in 1..=MAX_LOOKUP_Q {
        let spec = FieldSpec::builtin(q).map_err(|e| e.to_string())?;
        let mut table = build_lookup_table(&spec).map_err(|e| e.to_string())?;
        if corrupt && q == 7 {
            table.corrupt_entry(3, 5);
        }
        let lookup = MulBackend::Lookup(table);
        let mut check = |a: FieldElement, b: FieldElement| {
            compared += 1;
            let (x, y) = (lookup.mul(a, b), mul_naive(a, b, &spec));
            if x != y {
                Err(format!("q = {q}: lookup {a} * {b} = {x}, naive {y}"))
            } else {
                Ok(())
            }
        };
        if q <= exhaustive_max {
            for a in 0..1u64 << q {
                for b in 0..1u64 << q {
                    check(FieldElement(a), FieldElement(b))?;
                }
            }
        } else {
            for _ in 0..pairs_mid {
                let a = random_element(&mut rng, &spec);
                let b = random_element(&mut rng, &spec);
                check(a, b)?;
            }
        }
    }
    let spec = FieldSpec::pentanomial64();
    let clmul = MulBackend::clmul64(&spec).map_err(|e| e.to_string())?;
    for _ in 0..pairs_64 {
        let a = random_element(&mut rng, &spec);
        let b = random_element(&mut rng, &spec);
        compared += 1;
        let (x, y) = (clmul.mul(a, b), mul_naive(a, b, &spec));
        if x != y {
            return Err(format!("q = 64: clmul {a} * {b} = {x}, naive {y}"));
        }
    }
    Ok(format!("{compared} products agree"))
}

/// The shift-xor reduction modulo `x^64 + x^4 + x^3 + x + 1` against
/// polynomial long division.
pub fn pentanomial_reduction(count: usize, seed: u64) -> CheckResult {
    if reduce_pentanomial64(1, 0) != FieldElement(0x1B) {
        return Err(format!("x^64 reduces to {}", reduce_pentanomial64(1, 0)));
    }
    let spec = FieldSpec::pentanomial64();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let (hi, lo): (u64, u64) = (rng.random(), rng.random());
        let want = reference::poly_rem(hi, lo, &spec);
        let got = reduce_pentanomial64(hi, lo).0;
        if got != want {
            return Err(format!("({hi:#x}, {lo:#x}): {got:#x} != {want:#x}"));
        }
    }
    Ok(format!("x^64 -> 0x1b, {count} random inputs agree"))
}

/// Random graph on at most `max_n` vertices with a random edge count.
fn random_graph(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize, max_avg_deg: usize) -> Graph {
    let n = rng.random_range(min_n..=max_n);
    let m = rng.random_range(0..=(max_avg_deg * n / 2).min(n * (n - 1) / 2));
    gen_random(n, m, rng.random()).expect("edge count within range")
}

fn rotating_setup(i: usize) -> Result<OracleSetup, String> {
    let (kind, q) = [
        (BackendKind::Lookup, 7),
        (BackendKind::Clmul, 64),
        (BackendKind::Naive, 26),
    ][i % 3];
    OracleSetup::new(kind, Some(q), 1).map_err(|e| e.to_string())
}

/// `graphs` random graphs without a `k`-path (certified by exhaustive
/// search), `seeds` oracle runs each, all must answer NO. Backends rotate.
pub fn soundness(graphs: usize, seeds: u64, max_n: usize, max_k: usize, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = 0;
    while found < graphs {
        let g = random_graph(&mut rng, 4, max_n, 3);
        let k = rng.random_range(3..=max_k);
        if brute_force_kpath(&g, k)
            .map_err(|e| e.to_string())?
            .is_some()
        {
            continue;
        }
        let setup = rotating_setup(found)?;
        for s in 0..seeds {
            let mut ctx = setup
                .context(k, rng.random::<u64>() ^ s)
                .map_err(|e| e.to_string())?;
            if decide_kpath(&g, &mut ctx).answer.is_yes() {
                return Err(format!(
                    "YES on a graph with no {k}-path (n = {}, m = {})",
                    g.n(),
                    g.m()
                ));
            }
        }
        found += 1;
    }
    Ok(format!(
        "{graphs} witness-free graphs x {seeds} seeds: all NO"
    ))
}

/// `graphs` random graphs that do contain a `k`-path, one run each over
/// GF(2^q) with the naive multiplier; all must answer YES.
pub fn completeness(graphs: usize, q: u32, max_n: usize, max_k: usize, seed: u64) -> CheckResult {
    let setup = OracleSetup::new(BackendKind::Naive, Some(q), 1).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = 0;
    while found < graphs {
        let g = random_graph(&mut rng, 4, max_n, 4);
        let k = rng.random_range(3..=max_k);
        if brute_force_kpath(&g, k)
            .map_err(|e| e.to_string())?
            .is_none()
        {
            continue;
        }
        let mut ctx = setup.context(k, rng.random()).map_err(|e| e.to_string())?;
        if !decide_kpath(&g, &mut ctx).answer.is_yes() {
            return Err(format!(
                "NO on a graph with a {k}-path (n = {}, m = {})",
                g.n(),
                g.m()
            ));
        }
        found += 1;
    }
    Ok(format!(
        "{graphs} graphs with a witness: all YES at q = {q}"
    ))
}

/// The walk DP against term-by-term expansion under the same random
/// assignment, on `instances` graphs with `n <= 5`, `k <= 4`.
pub fn dp_certification(instances: usize, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..instances {
        let g = random_graph(&mut rng, 1, 5, 4);
        let k = rng.random_range(1..=4);
        let (kind, q) = [
            (BackendKind::Naive, 26),
            (BackendKind::Lookup, 8),
            (BackendKind::Clmul, 64),
        ][i % 3];
        let spec = field_spec(q).map_err(|e| e.to_string())?;
        let backend = MulBackend::build(kind, &spec).map_err(|e| e.to_string())?;
        let a = Assignment::random(&g, k, &spec, &mut rng);
        let want = brute_force_eval(&g, &a, &spec).map_err(|e| e.to_string())?;
        let got = evaluate(&g, &a, &backend).value;
        if got != want {
            return Err(format!(
                "instance {i} ({kind}, k = {k}): DP {got}, expansion {want}"
            ));
        }
    }
    Ok(format!("{instances} instances agree"))
}

/// Exact-oracle bisection on planted set systems must stay within
/// `2k (log2(n/k) + 2)` queries and return a witness.
pub fn bisect_bound(instances: usize, ns: &[usize], max_k: usize, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for i in 0..instances {
        let n = ns[i % ns.len()];
        let k = 1 + (i / ns.len()) % max_k;
        let count = rng.random_range(1..=3);
        let fam = PlantedFamily::random(n, k, count, &mut rng);
        let (w, trace) = extract_bisect(&mut fam.oracle(), &fam.universe());
        let bound = bisect_query_bound(n, k);
        if !fam.is_witness(&w) {
            return Err(format!("n = {n}, k = {k}: result is not a witness"));
        }
        if trace.total_queries() as f64 > bound {
            return Err(format!(
                "n = {n}, k = {k}: {} queries > {bound:.1}",
                trace.total_queries()
            ));
        }
        worst = worst.max(trace.total_queries() as f64 / bound);
    }
    Ok(format!(
        "{instances} runs within bound (max queries/bound {worst:.3})"
    ))
}

/// Las Vegas extraction against an oracle whose every YES is flipped to NO
/// with probability exactly `p`. All results must be witnesses and the mean
/// query count must stay within `15 Q(n,k) + 6k ln 2k`.
pub fn las_vegas_bound(trials: usize, n: usize, k: usize, p: f64, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0usize;
    let mut flipped = 0u64;
    for t in 0..trials {
        let fam = PlantedFamily::random(n, k, 1, &mut rng);
        let mut oracle = FlakyOracle::new(fam.oracle(), p, ChaCha8Rng::seed_from_u64(rng.random()));
        let (w, trace) = extract_las_vegas(&mut oracle, &mut fam.checker(), &fam.universe())
            .map_err(|e| format!("trial {t}: {e}"))?;
        if !fam.is_witness(&w) || !trace.verified {
            return Err(format!("trial {t}: result is not a witness"));
        }
        total += trace.total_queries();
        flipped += oracle.flipped();
    }
    let mean = total as f64 / trials as f64;
    let bound = las_vegas_query_bound(n, k);
    if mean > bound {
        return Err(format!("mean {mean:.1} queries > {bound:.1}"));
    }
    Ok(format!(
        "{trials} trials verified, mean {mean:.1} queries <= {bound:.1} ({flipped} answers flipped)"
    ))
}
