//! Instance generation and timed runs shared by the CLI and the acceptance
//! suite.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, ensure, Context, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use wex_core::gf2q::{mul_naive, random_element};
use wex_core::graph::{enumerate_witnesses, gen_random, gen_spider, is_simple_path_edges};
use wex_core::kpath::decide_repeated;
use wex_core::{
    kpath_extract, Algorithm, BackendKind, FieldSpec, Graph, KpathExtraction, MulBackend,
    OracleContext, OracleVerdict, Phases, SpiderSpec,
};

use crate::record::{median, BenchRecord};

/// Runs per measured point; seeds `seed + 0 .. seed + 4`.
pub const RUNS: u64 = 5;

/// Repetitions of the decision oracle before extraction starts.
pub const PRECHECK_REPS: u32 = 10;

/// `q = 64` means the pentanomial field; anything else the shipped
/// primitive polynomial of that degree.
pub fn field_spec(q: u32) -> Result<FieldSpec> {
    if q == 64 {
        return Ok(FieldSpec::pentanomial64());
    }
    Ok(FieldSpec::builtin(q)?)
}

/// naive: 26, lookup: 7, clmul: 64.
pub fn default_q(backend: BackendKind) -> u32 {
    match backend {
        BackendKind::Naive => 26,
        BackendKind::Lookup => 7,
        BackendKind::Clmul => 64,
    }
}

/// Field, multiplier and repetition count of an oracle.
#[derive(Clone, Debug)]
pub struct OracleSetup {
    pub kind: BackendKind,
    pub q: u32,
    pub reps: u32,
    backend: Arc<MulBackend>,
}

impl OracleSetup {
    /// Builds the multiplier (and its table, if any) once.
    pub fn new(kind: BackendKind, q: Option<u32>, reps: u32) -> Result<Self> {
        let q = q.unwrap_or_else(|| default_q(kind));
        ensure!(reps >= 1, "--reps must be at least 1");
        let spec = field_spec(q)?;
        let backend = MulBackend::build(kind, &spec)
            .with_context(|| format!("backend {kind} cannot run over GF(2^{q})"))?;
        Ok(OracleSetup {
            kind,
            q,
            reps,
            backend: Arc::new(backend),
        })
    }

    /// Fails when `2k / 2^q > 1/4`.
    pub fn context(&self, k: usize, seed: u64) -> Result<OracleContext> {
        let ctx = OracleContext::new(self.backend.clone(), k, seed)?;
        Ok(ctx.with_repetitions(self.reps)?)
    }

    fn record(&self, graph: &Graph, k: usize, algo: &str, seed: u64) -> BenchRecord {
        BenchRecord {
            kind: "run".into(),
            n: graph.n(),
            m: graph.m(),
            k,
            algo: algo.into(),
            backend: self.kind.to_string(),
            q: self.q,
            reps: self.reps,
            seed,
            queries: 0,
            field_ops: 0,
            wall_time_ms: 0.0,
            verified: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    SpiderUnique,
    SpiderMany,
    Random,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::SpiderUnique => "spider-unique",
            Family::SpiderMany => "spider-many",
            Family::Random => "random",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spider-unique" => Ok(Family::SpiderUnique),
            "spider-many" => Ok(Family::SpiderMany),
            "random" => Ok(Family::Random),
            other => Err(format!(
                "unknown family `{other}` (expected spider-unique, spider-many or random)"
            )),
        }
    }
}

/// What is known about the number of `k`-paths.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessCount {
    Unique,
    /// Exactly this many, quadratic in the number of legs.
    Many(u64),
    Unknown,
}

impl fmt::Display for WitnessCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessCount::Unique => f.write_str("unique"),
            WitnessCount::Many(c) => write!(f, "{c} (quadratic in n)"),
            WitnessCount::Unknown => f.write_str("unknown"),
        }
    }
}

pub struct Instance {
    pub graph: Graph,
    pub witnesses: WitnessCount,
}

/// Spider families ignore `m`; `random` needs it.
pub fn generate(
    family: Family,
    n: usize,
    k: usize,
    m: Option<usize>,
    seed: u64,
) -> Result<Instance> {
    let inst = match family {
        Family::SpiderUnique => Instance {
            graph: gen_spider(SpiderSpec::unique(k, n), seed)?.graph,
            witnesses: WitnessCount::Unique,
        },
        Family::SpiderMany => {
            let s = gen_spider(SpiderSpec::many(k, n), seed)?;
            Instance {
                witnesses: WitnessCount::Many(s.expected_witnesses()),
                graph: s.graph,
            }
        }
        Family::Random => {
            let Some(m) = m else {
                bail!("family random needs --m");
            };
            Instance {
                graph: gen_random(n, m, seed)?,
                witnesses: WitnessCount::Unknown,
            }
        }
    };
    Ok(inst)
}

/// Count witnesses by enumeration when that is cheap, else `Unknown`.
pub fn count_small(graph: &Graph, k: usize) -> WitnessCount {
    match enumerate_witnesses(graph, k) {
        Ok(ws) if ws.len() == 1 => WitnessCount::Unique,
        Ok(ws) => WitnessCount::Many(ws.len() as u64),
        Err(_) => WitnessCount::Unknown,
    }
}

/// Milliseconds since `start`, to the microsecond.
fn elapsed_ms(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// One timed [`decide_repeated`] call.
pub fn run_decide(
    graph: &Graph,
    k: usize,
    setup: &OracleSetup,
    seed: u64,
) -> Result<(OracleVerdict, BenchRecord)> {
    let mut ctx = setup.context(k, seed)?;
    let start = Instant::now();
    let verdict = decide_repeated(graph, &mut ctx);
    let ms = elapsed_ms(start);
    let mut rec = setup.record(graph, k, "decide", seed);
    rec.queries = ctx.calls();
    rec.field_ops = verdict.field_ops;
    rec.wall_time_ms = ms;
    rec.verified = verdict.answer.is_yes();
    Ok((verdict, rec))
}

/// One timed extraction. The witness is checked again, independently of
/// the extractor's own checker, before the row is marked verified.
pub fn run_extract(
    graph: &Graph,
    k: usize,
    algo: Algorithm,
    phases: Phases,
    setup: &OracleSetup,
    seed: u64,
) -> Result<(KpathExtraction, BenchRecord)> {
    let mut ctx = setup.context(k, seed)?;
    let start = Instant::now();
    let out = kpath_extract(graph, &mut ctx, algo, phases)?;
    let ms = elapsed_ms(start);
    let mut rec = setup.record(graph, k, algo.name(), seed);
    rec.queries = out.total_queries() as u64;
    rec.field_ops = out.field_ops;
    rec.wall_time_ms = ms;
    rec.verified =
        out.witness.k() == k && (k == 1 || is_simple_path_edges(graph, &out.witness.edge_set, k));
    Ok((out, rec))
}

/// [`RUNS`] extractions with seeds `seed..seed + RUNS`, then their median.
/// A failed run becomes an unverified row with zero counts.
pub fn extract_point(
    graph: &Graph,
    k: usize,
    algo: Algorithm,
    phases: Phases,
    setup: &OracleSetup,
    seed: u64,
) -> Vec<BenchRecord> {
    let mut rows: Vec<BenchRecord> = (0..RUNS)
        .map(|i| {
            let s = seed.wrapping_add(i);
            match run_extract(graph, k, algo, phases, setup, s) {
                Ok((_, rec)) => rec,
                Err(_) => setup.record(graph, k, algo.name(), s),
            }
        })
        .collect();
    let med = median(&rows);
    rows.push(med);
    rows
}

/// Like [`extract_point`] for the decision oracle.
pub fn decide_point(
    graph: &Graph,
    k: usize,
    setup: &OracleSetup,
    seed: u64,
) -> Result<Vec<BenchRecord>> {
    let mut rows = Vec::with_capacity(RUNS as usize + 1);
    for i in 0..RUNS {
        rows.push(run_decide(graph, k, setup, seed.wrapping_add(i))?.1);
    }
    let med = median(&rows);
    rows.push(med);
    Ok(rows)
}

/// `count` random products with `setup`'s multiplier, timed, checked
/// against the naive reference afterwards.
pub fn mul_point(setup: &OracleSetup, count: usize, seed: u64) -> BenchRecord {
    let spec = setup.backend.spec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a: Vec<_> = (0..count)
        .map(|_| random_element(&mut rng, &spec))
        .collect();
    let b: Vec<_> = (0..count)
        .map(|_| random_element(&mut rng, &spec))
        .collect();
    let start = Instant::now();
    let prod: Vec<_> = a
        .iter()
        .zip(&b)
        .map(|(&x, &y)| setup.backend.mul(x, y))
        .collect();
    let ms = elapsed_ms(start);
    let verified = a
        .iter()
        .zip(&b)
        .zip(&prod)
        .all(|((&x, &y), &p)| mul_naive(x, y, &spec) == p);
    BenchRecord {
        kind: "run".into(),
        n: 0,
        m: 0,
        k: 0,
        algo: "mul".into(),
        backend: setup.kind.to_string(),
        q: setup.q,
        reps: 1,
        seed,
        queries: 0,
        field_ops: count as u64,
        wall_time_ms: ms,
        verified,
    }
}

/// Backend comparison on fixed instances.
///
/// Decision mode times the oracle on a spider whose longest path has
/// `k - 1` vertices, so the answer is NO and every repetition runs:
/// naive/26, lookup/7, lookup/7 with 10 repetitions, clmul/64. Extraction
/// mode runs fifo two-phase on a unique-witness spider with lookup/7 and
/// clmul/64. With `mul_count > 0`, raw multiplication throughput for
/// every field the backends support comes first.
pub fn fieldtest(n: usize, k: usize, seed: u64, mul_count: usize) -> Result<Vec<BenchRecord>> {
    let mut rows = Vec::new();
    if mul_count > 0 {
        for q in 1..=26 {
            rows.push(mul_point(
                &OracleSetup::new(BackendKind::Naive, Some(q), 1)?,
                mul_count,
                seed,
            ));
            if q <= wex_core::gf2q::MAX_LOOKUP_Q {
                rows.push(mul_point(
                    &OracleSetup::new(BackendKind::Lookup, Some(q), 1)?,
                    mul_count,
                    seed,
                ));
            }
        }
        rows.push(mul_point(
            &OracleSetup::new(BackendKind::Naive, Some(64), 1)?,
            mul_count,
            seed,
        ));
        rows.push(mul_point(
            &OracleSetup::new(BackendKind::Clmul, Some(64), 1)?,
            mul_count,
            seed,
        ));
    }

    let no_instance = gen_spider(SpiderSpec::unique(k - 1, n), seed)?.graph;
    for setup in decision_setups()? {
        rows.extend(decide_point(&no_instance, k, &setup, seed)?);
    }
    let yes_instance = gen_spider(SpiderSpec::unique(k, n), seed)?.graph;
    for setup in extraction_setups()? {
        rows.extend(extract_point(
            &yes_instance,
            k,
            Algorithm::Fifo,
            Phases::Two,
            &setup,
            seed,
        ));
    }
    Ok(rows)
}

pub fn decision_setups() -> Result<Vec<OracleSetup>> {
    Ok(vec![
        OracleSetup::new(BackendKind::Naive, Some(26), 1)?,
        OracleSetup::new(BackendKind::Lookup, Some(7), 1)?,
        OracleSetup::new(BackendKind::Lookup, Some(7), 10)?,
        OracleSetup::new(BackendKind::Clmul, Some(64), 1)?,
    ])
}

pub fn extraction_setups() -> Result<Vec<OracleSetup>> {
    Ok(vec![
        OracleSetup::new(BackendKind::Lookup, Some(7), 1)?,
        OracleSetup::new(BackendKind::Clmul, Some(64), 1)?,
    ])
}

/// Parse `6..=12`, `6..13` or `6,8,10` into a list.
pub fn parse_sweep(s: &str) -> Result<Vec<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad number `{t}` in `{s}`"))
    };
    if let Some((a, b)) = s.split_once("..=") {
        return Ok((num(a)?..=num(b)?).collect());
    }
    if let Some((a, b)) = s.split_once("..") {
        return Ok((num(a)?..num(b)?).collect());
    }
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(num).collect()
}
