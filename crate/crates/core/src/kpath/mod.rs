//! Randomized algebraic k-path decision oracle and its inclusion-oracle
//! wrappers.
//!
//! A call evaluates a degree-`2k` polynomial whose monomials correspond to
//! (directed `k`-vertex path, labelling) pairs at a uniformly random point of
//! GF(2^q), at a cost of `(2^k - 1) * O(k (n + m))` field operations. A
//! nonzero value proves a path exists; when one exists the value is zero with
//! probability at most `2k / 2^q`.
//!
//! Other polynomial oracles (graph motif has degree `3k - 1` and
//! `O(2^k k^2 m)` field operations) plug into extraction the same way:
//! implement [`InclusionOracle`](crate::extract::InclusionOracle) on top of
//! the self-reduction.

mod brute;
mod dp;
mod inclusion;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gf2q::{FieldElement, FieldError, FieldSpec, MulBackend};
use crate::graph::{Graph, GraphError};

pub use brute::{brute_force_eval, MAX_BRUTE_EVAL_K, MAX_BRUTE_EVAL_N};
pub use dp::{dp_field_ops, evaluate, Assignment, Evaluation};
pub use inclusion::{
    edge_inclusion_oracle, vertex_inclusion_oracle, EdgeInclusionOracle, VertexInclusionOracle,
};

/// Largest pattern size the oracle accepts.
pub const MAX_K: usize = 30;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("pattern size k must be at least 1")]
    ZeroK,
    #[error("pattern size k = {0} exceeds {MAX_K}")]
    KTooLarge(usize),
    #[error("repetitions must be at least 1")]
    ZeroRepetitions,
    #[error(
        "per-call false-negative bound 2k/2^q = {bound:.4} exceeds 1/4 (k = {k}, q = {q}); use a larger field"
    )]
    ErrorBound { k: usize, q: u32, bound: f64 },
    #[error("brute-force evaluation limited to n <= {MAX_BRUTE_EVAL_N}, k <= {MAX_BRUTE_EVAL_K} (got n = {n}, k = {k})")]
    BruteForceGuard { n: usize, k: usize },
    #[error("assignment shape does not match the graph")]
    AssignmentShape,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

impl From<bool> for Answer {
    fn from(b: bool) -> Self {
        if b {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleVerdict {
    pub answer: Answer,
    pub field_ops: u64,
    /// The polynomial value of the last run; `answer` is YES iff nonzero.
    pub evaluation: FieldElement,
}

/// Everything an oracle call needs: field, multiplier, pattern size, number
/// of repetitions, and a master seed from which every call derives its own
/// independent random stream.
#[derive(Clone, Debug)]
pub struct OracleContext {
    spec: FieldSpec,
    backend: Arc<MulBackend>,
    k: usize,
    repetitions: u32,
    master_seed: u64,
    calls: u64,
}

impl OracleContext {
    /// Context with one repetition. Rejects `k` outside `1..=30` and fields
    /// where a single call may miss a path with probability above 1/4.
    pub fn new(backend: Arc<MulBackend>, k: usize, seed: u64) -> Result<Self, OracleError> {
        let ctx = OracleContext::unchecked_bound(backend, k, seed)?;
        let bound = ctx.error_bound();
        if bound > 0.25 {
            return Err(OracleError::ErrorBound {
                k,
                q: ctx.spec.q(),
                bound,
            });
        }
        Ok(ctx)
    }

    /// Like [`OracleContext::new`] but accepts any error bound. For measuring
    /// the false-negative rate of deliberately small fields.
    pub fn unchecked_bound(
        backend: Arc<MulBackend>,
        k: usize,
        seed: u64,
    ) -> Result<Self, OracleError> {
        if k == 0 {
            return Err(OracleError::ZeroK);
        }
        if k > MAX_K {
            return Err(OracleError::KTooLarge(k));
        }
        Ok(OracleContext {
            spec: backend.spec(),
            backend,
            k,
            repetitions: 1,
            master_seed: seed,
            calls: 0,
        })
    }

    pub fn with_repetitions(mut self, repetitions: u32) -> Result<Self, OracleError> {
        if repetitions == 0 {
            return Err(OracleError::ZeroRepetitions);
        }
        self.repetitions = repetitions;
        Ok(self)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn backend(&self) -> &MulBackend {
        &self.backend
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn repetitions(&self) -> u32 {
        self.repetitions
    }

    pub fn seed(&self) -> u64 {
        self.master_seed
    }

    /// Oracle runs performed so far (one per repetition).
    pub fn calls(&self) -> u64 {
        self.calls
    }

    /// Polynomial degree `d = 2k`.
    pub fn degree(&self) -> u32 {
        2 * self.k as u32
    }

    /// `d / 2^q`: bound on the false-negative probability of one run.
    pub fn error_bound(&self) -> f64 {
        self.spec.zero_probability_bound(self.degree())
    }

    /// Bound after combining `repetitions` independent runs.
    pub fn repeated_error_bound(&self) -> f64 {
        self.error_bound().powi(self.repetitions as i32)
    }

    /// Fresh generator for the next run: master seed, stream = call index.
    fn next_rng(&mut self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.calls);
        self.calls += 1;
        rng
    }
}

/// One run of the oracle on `graph` with pattern size `ctx.k()`.
///
/// YES is always right. `k = 1` and `k = 2` are answered exactly (a vertex,
/// an edge); larger `k` evaluate the generating function at a fresh random
/// point.
pub fn decide_kpath(graph: &Graph, ctx: &mut OracleContext) -> OracleVerdict {
    let k = ctx.k;
    let trivial = match k {
        1 => Some(graph.n() > 0),
        2 => Some(graph.m() > 0),
        _ => None,
    };
    if let Some(yes) = trivial {
        ctx.calls += 1;
        return OracleVerdict {
            answer: yes.into(),
            field_ops: 0,
            evaluation: FieldElement(yes as u64),
        };
    }
    let mut rng = ctx.next_rng();
    let assignment = Assignment::random(graph, k, &ctx.spec, &mut rng);
    let eval = evaluate(graph, &assignment, &ctx.backend);
    OracleVerdict {
        answer: (!eval.value.is_zero()).into(),
        field_ops: eval.field_ops,
        evaluation: eval.value,
    }
}

/// Up to `ctx.repetitions()` independent runs; YES as soon as one run says
/// YES. Errors are false negatives only, so this drives the miss
/// probability to `p^r` and never adds a false positive.
pub fn decide_repeated(graph: &Graph, ctx: &mut OracleContext) -> OracleVerdict {
    let mut field_ops = 0;
    let mut last = None;
    for _ in 0..ctx.repetitions {
        let v = decide_kpath(graph, ctx);
        field_ops += v.field_ops;
        last = Some(v);
        if v.answer.is_yes() {
            break;
        }
    }
    let last = last.expect("repetitions >= 1");
    OracleVerdict { field_ops, ..last }
}
