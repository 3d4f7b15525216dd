//! Witness extraction from an inclusion oracle.
//!
//! An inclusion oracle answers "does some witness lie entirely inside `Y`?"
//! with no false positives. [`extract_bisect`] finds a witness with a FIFO
//! queue of halving candidate sets and at most `2k (log2(n/k) + 2)` queries
//! when the oracle is exact; [`extract_las_vegas`] adds a pruning stage that
//! copes with false negatives and stops once an exact checker accepts.
//! Neither reads `k`. [`extract_hklr`] is the random-discard baseline, which
//! does.

mod kpath;
pub mod sim;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::io::{self, Write};

use rand::seq::index;
use rand::Rng;
use thiserror::Error;

use crate::graph::GraphError;
use crate::kpath::OracleError;

pub use kpath::{
    kpath_extract, single_phase_kpath_extract, two_phase_kpath_extract, Algorithm, KpathExtraction,
    Phases,
};

pub type ItemId = u32;

/// Stage-2 loop iterations allowed before giving up.
pub const DEFAULT_PASS_CAP: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("item universe is empty")]
    EmptyUniverse,
    #[error("item {0} appears twice in the universe")]
    DuplicateItem(ItemId),
    #[error("no witness found after {passes} pruning passes; does the input contain one?")]
    PassCap { passes: u64 },
    #[error("no witness: the pre-check answered NO")]
    NoWitness,
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Items in a fixed order. Splits follow this order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ItemUniverse {
    items: Vec<ItemId>,
}

impl ItemUniverse {
    pub fn new(items: Vec<ItemId>) -> Result<Self, ExtractError> {
        let mut seen = HashSet::with_capacity(items.len());
        for &x in &items {
            if !seen.insert(x) {
                return Err(ExtractError::DuplicateItem(x));
            }
        }
        Ok(ItemUniverse { items })
    }

    /// `0, 1, ..., n - 1`.
    pub fn range(n: usize) -> Self {
        ItemUniverse {
            items: (0..n as ItemId).collect(),
        }
    }

    pub fn items(&self) -> &[ItemId] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

pub trait InclusionOracle {
    /// Does some witness lie inside `query`? YES must be right; NO may be a
    /// false negative with probability at most [`error_bound`](Self::error_bound).
    fn includes(&mut self, query: &[ItemId]) -> bool;

    fn error_bound(&self) -> f64 {
        0.0
    }
}

impl<F: FnMut(&[ItemId]) -> bool> InclusionOracle for F {
    fn includes(&mut self, query: &[ItemId]) -> bool {
        self(query)
    }
}

/// Exact membership test for the witness family.
pub trait WitnessChecker {
    fn is_witness(&mut self, candidate: &[ItemId]) -> bool;
}

impl<F: FnMut(&[ItemId]) -> bool> WitnessChecker for F {
    fn is_witness(&mut self, candidate: &[ItemId]) -> bool {
        self(candidate)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    /// Halving queue.
    Bisect,
    /// One-at-a-time removal until the checker accepts.
    Prune,
    /// Random-subset discards.
    Discard,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Bisect => "bisect",
            Stage::Prune => "prune",
            Stage::Discard => "discard",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QueryRecord {
    pub stage: Stage,
    /// Size of the current universe (or candidate set) when asked.
    pub universe_size: usize,
    pub query_size: usize,
    pub answer: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExtractionTrace {
    pub queries: Vec<QueryRecord>,
    pub result: Vec<ItemId>,
    /// The checker accepted `result`. Always false for [`extract_bisect`],
    /// which has no checker.
    pub verified: bool,
    pub checker_calls: u64,
}

pub const TRACE_CSV_HEADER: &str =
    "run_id,stage,universe_size,query_size,answer,cumulative_queries";

impl ExtractionTrace {
    pub fn total_queries(&self) -> usize {
        self.queries.len()
    }

    pub fn queries_in(&self, stage: Stage) -> usize {
        self.queries.iter().filter(|q| q.stage == stage).count()
    }

    /// One line per query, no header. `run_id` is written verbatim.
    pub fn write_csv<W: Write>(&self, run_id: &str, mut out: W) -> io::Result<()> {
        for (i, q) in self.queries.iter().enumerate() {
            writeln!(
                out,
                "{run_id},{},{},{},{},{}",
                q.stage,
                q.universe_size,
                q.query_size,
                if q.answer { "YES" } else { "NO" },
                i + 1
            )?;
        }
        Ok(())
    }

    fn ask<O: InclusionOracle + ?Sized>(
        &mut self,
        oracle: &mut O,
        stage: Stage,
        universe_size: usize,
        query: &[ItemId],
    ) -> bool {
        let answer = oracle.includes(query);
        self.queries.push(QueryRecord {
            stage,
            universe_size,
            query_size: query.len(),
            answer,
        });
        answer
    }

    fn check<C: WitnessChecker + ?Sized>(&mut self, checker: &mut C, candidate: &[ItemId]) -> bool {
        self.checker_calls += 1;
        checker.is_witness(candidate)
    }
}

/// `Q(n, k) = 2k (log2(n/k) + 2)`: the query budget of [`extract_bisect`]
/// with an exact oracle and witnesses of size `k <= n`.
pub fn bisect_query_bound(n: usize, k: usize) -> f64 {
    let k = k as f64;
    2.0 * k * ((n as f64 / k).log2() + 2.0)
}

/// `15 Q(n, k) + 6k ln(2k)`: bound on the expected number of queries of
/// [`extract_las_vegas`] when every false negative has probability at most
/// 1/4.
pub fn las_vegas_query_bound(n: usize, k: usize) -> f64 {
    15.0 * bisect_query_bound(n, k) + 6.0 * k as f64 * (2.0 * k as f64).ln()
}

/// `[start, end)` in universe positions; every candidate set is one.
type Span = (usize, usize);

/// First half gets the extra item.
fn split((start, end): Span) -> (Span, Span) {
    let mid = start + (end - start).div_ceil(2);
    ((start, mid), (mid, end))
}

/// The bisecting extractor.
///
/// Keeps a FIFO queue of candidate sets, starting with the whole universe.
/// A singleton is kept. Anything larger is halved into `A1, A2`; if a
/// witness survives without `A1` the universe drops `A1` and `A2` goes back
/// on the queue, else the same is tried for `A2`, else both halves are
/// queued. The universe only ever shrinks to sets the oracle said YES to, so
/// the result always contains a witness when the universe did; with an exact
/// oracle it is one.
pub fn extract_bisect<O: InclusionOracle + ?Sized>(
    oracle: &mut O,
    universe: &ItemUniverse,
) -> (Vec<ItemId>, ExtractionTrace) {
    let items = universe.items();
    let mut trace = ExtractionTrace::default();
    let mut alive = vec![true; items.len()];
    let mut size = items.len();
    let mut queue: VecDeque<Span> = VecDeque::new();
    if size > 0 {
        queue.push_back((0, size));
    }
    let mut query = Vec::with_capacity(size);

    let without = |alive: &[bool], (s, e): Span, query: &mut Vec<ItemId>| {
        query.clear();
        query.extend(
            (0..items.len())
                .filter(|&i| alive[i] && !(s..e).contains(&i))
                .map(|i| items[i]),
        );
    };

    while let Some(a) = queue.pop_front() {
        if a.1 - a.0 == 1 {
            continue;
        }
        let (a1, a2) = split(a);
        without(&alive, a1, &mut query);
        if trace.ask(oracle, Stage::Bisect, size, &query) {
            alive[a1.0..a1.1].fill(false);
            size -= a1.1 - a1.0;
            queue.push_back(a2);
            continue;
        }
        without(&alive, a2, &mut query);
        if trace.ask(oracle, Stage::Bisect, size, &query) {
            alive[a2.0..a2.1].fill(false);
            size -= a2.1 - a2.0;
            queue.push_back(a1);
            continue;
        }
        queue.push_back(a1);
        queue.push_back(a2);
    }

    let result: Vec<ItemId> = (0..items.len())
        .filter(|&i| alive[i])
        .map(|i| items[i])
        .collect();
    trace.result = result.clone();
    (result, trace)
}

/// The Las Vegas extractor: [`extract_bisect`], then prune one item at a
/// time until `checker` accepts. Gives up after [`DEFAULT_PASS_CAP`]
/// pruning iterations.
pub fn extract_las_vegas<O, C>(
    oracle: &mut O,
    checker: &mut C,
    universe: &ItemUniverse,
) -> Result<(Vec<ItemId>, ExtractionTrace), ExtractError>
where
    O: InclusionOracle + ?Sized,
    C: WitnessChecker + ?Sized,
{
    extract_las_vegas_capped(oracle, checker, universe, DEFAULT_PASS_CAP)
}

pub fn extract_las_vegas_capped<O, C>(
    oracle: &mut O,
    checker: &mut C,
    universe: &ItemUniverse,
    pass_cap: u64,
) -> Result<(Vec<ItemId>, ExtractionTrace), ExtractError>
where
    O: InclusionOracle + ?Sized,
    C: WitnessChecker + ?Sized,
{
    if universe.is_empty() {
        return Err(ExtractError::EmptyUniverse);
    }
    let (w, mut trace) = extract_bisect(oracle, universe);
    let w = prune(oracle, checker, w, &mut trace, pass_cap)?;
    trace.result = w.clone();
    trace.verified = true;
    Ok((w, trace))
}

/// Queue every item of `w`; pop one, drop it if a witness survives without
/// it, otherwise requeue it. Stops when the checker accepts `w`.
fn prune<O, C>(
    oracle: &mut O,
    checker: &mut C,
    mut w: Vec<ItemId>,
    trace: &mut ExtractionTrace,
    pass_cap: u64,
) -> Result<Vec<ItemId>, ExtractError>
where
    O: InclusionOracle + ?Sized,
    C: WitnessChecker + ?Sized,
{
    let mut queue: VecDeque<ItemId> = w.iter().copied().collect();
    let mut passes = 0u64;
    let mut query = Vec::with_capacity(w.len());
    while !trace.check(checker, &w) {
        if passes >= pass_cap {
            return Err(ExtractError::PassCap { passes });
        }
        passes += 1;
        let Some(e) = queue.pop_front() else {
            return Err(ExtractError::PassCap { passes });
        };
        query.clear();
        query.extend(w.iter().copied().filter(|&x| x != e));
        if trace.ask(oracle, Stage::Prune, w.len(), &query) {
            w.retain(|&x| x != e);
        } else {
            queue.push_back(e);
        }
    }
    Ok(w)
}

/// Random-discard baseline. While the universe has more than `2k` items,
/// draw `max(1, |U| / k)` of them uniformly and drop them if a witness
/// survives; after `k` failures in a row, or once `|U| <= 2k`, finish with
/// the one-at-a-time pruning of [`extract_las_vegas`]. The checker runs
/// before every discard attempt.
pub fn extract_hklr<O, C, R>(
    oracle: &mut O,
    checker: &mut C,
    universe: &ItemUniverse,
    k: usize,
    rng: &mut R,
) -> Result<(Vec<ItemId>, ExtractionTrace), ExtractError>
where
    O: InclusionOracle + ?Sized,
    C: WitnessChecker + ?Sized,
    R: Rng + ?Sized,
{
    extract_hklr_capped(oracle, checker, universe, k, rng, DEFAULT_PASS_CAP)
}

pub fn extract_hklr_capped<O, C, R>(
    oracle: &mut O,
    checker: &mut C,
    universe: &ItemUniverse,
    k: usize,
    rng: &mut R,
    pass_cap: u64,
) -> Result<(Vec<ItemId>, ExtractionTrace), ExtractError>
where
    O: InclusionOracle + ?Sized,
    C: WitnessChecker + ?Sized,
    R: Rng + ?Sized,
{
    if universe.is_empty() {
        return Err(ExtractError::EmptyUniverse);
    }
    let k = k.max(1);
    let mut trace = ExtractionTrace::default();
    let mut u = universe.items().to_vec();
    let mut failures = 0;
    let mut drop = Vec::new();
    let mut query = Vec::with_capacity(u.len());
    loop {
        if trace.check(checker, &u) {
            trace.result = u.clone();
            trace.verified = true;
            return Ok((u, trace));
        }
        if u.len() <= 2 * k || failures >= k {
            break;
        }
        let r = (u.len() / k).max(1);
        drop.clear();
        drop.resize(u.len(), false);
        for i in index::sample(rng, u.len(), r) {
            drop[i] = true;
        }
        query.clear();
        query.extend(u.iter().zip(&drop).filter(|(_, &d)| !d).map(|(&x, _)| x));
        if trace.ask(oracle, Stage::Discard, u.len(), &query) {
            std::mem::swap(&mut u, &mut query);
            failures = 0;
        } else {
            failures += 1;
        }
    }
    let w = prune(oracle, checker, u, &mut trace, pass_cap)?;
    trace.result = w.clone();
    trace.verified = true;
    Ok((w, trace))
}
