//! k-path extraction drivers: vertex phase then edge phase, or edges only.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{
    has_hamiltonian_path, is_simple_path_edges, reconstruct_path, Graph, PathWitness, VertexId,
    MAX_HAMILTONIAN_N,
};
use crate::kpath::{EdgeInclusionOracle, OracleContext, VertexInclusionOracle};

use super::{
    extract_hklr, extract_las_vegas, ExtractError, ExtractionTrace, InclusionOracle, ItemId,
    ItemUniverse, WitnessChecker,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    /// Bisection followed by pruning.
    Fifo,
    /// Random-subset discards.
    Hklr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phases {
    /// Extract over all edges of the graph.
    One,
    /// Extract `k` vertices first, then the edges among them.
    Two,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Fifo => "fifo",
            Algorithm::Hklr => "hklr",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fifo" => Ok(Algorithm::Fifo),
            "hklr" => Ok(Algorithm::Hklr),
            other => Err(format!(
                "unknown algorithm `{other}` (expected fifo or hklr)"
            )),
        }
    }
}

impl Phases {
    pub fn name(self) -> &'static str {
        match self {
            Phases::One => "one",
            Phases::Two => "two",
        }
    }
}

impl fmt::Display for Phases {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Phases {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "one" => Ok(Phases::One),
            "two" => Ok(Phases::Two),
            other => Err(format!(
                "unknown phase count `{other}` (expected one or two)"
            )),
        }
    }
}

#[derive(Clone, Debug)]
pub struct KpathExtraction {
    pub witness: PathWitness,
    pub vertex_trace: Option<ExtractionTrace>,
    pub edge_trace: Option<ExtractionTrace>,
    /// Field operations spent by all oracle calls.
    pub field_ops: u64,
}

impl KpathExtraction {
    pub fn total_queries(&self) -> usize {
        self.vertex_trace
            .iter()
            .chain(&self.edge_trace)
            .map(|t| t.total_queries())
            .sum()
    }
}

/// Vertex phase with a Held–Karp checker, then edge phase inside the
/// chosen vertices, both with the fifo extractor.
pub fn two_phase_kpath_extract(
    graph: &Graph,
    ctx: &mut OracleContext,
) -> Result<KpathExtraction, ExtractError> {
    kpath_extract(graph, ctx, Algorithm::Fifo, Phases::Two)
}

/// Edge extraction over the whole graph with the fifo extractor.
pub fn single_phase_kpath_extract(
    graph: &Graph,
    ctx: &mut OracleContext,
) -> Result<KpathExtraction, ExtractError> {
    kpath_extract(graph, ctx, Algorithm::Fifo, Phases::One)
}

/// Find a simple path on `ctx.k()` vertices. The graph must contain one.
///
/// `Phases::Two` needs an exact vertex-set checker, which is only available
/// for `k <= 24`; larger `k` run a single edge phase. `k = 1` always runs a
/// vertex phase only.
pub fn kpath_extract(
    graph: &Graph,
    ctx: &mut OracleContext,
    algorithm: Algorithm,
    phases: Phases,
) -> Result<KpathExtraction, ExtractError> {
    let k = ctx.k();
    // HKLR draws from its own stream so oracle calls keep their numbering
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed());
    rng.set_stream(u64::MAX);
    let mut run = |oracle: &mut dyn InclusionOracle,
                   checker: &mut dyn WitnessChecker,
                   universe: &ItemUniverse| match algorithm {
        Algorithm::Fifo => extract_las_vegas(oracle, checker, universe),
        Algorithm::Hklr => extract_hklr(oracle, checker, universe, k, &mut rng),
    };

    let mut field_ops = 0;
    let mut vertex_trace = None;
    let mut edge_trace = None;

    if k == 1 || (phases == Phases::Two && k <= MAX_HAMILTONIAN_N) {
        let (s, trace) = {
            let mut oracle = VertexInclusionOracle::new(graph, ctx);
            let mut checker = |cand: &[ItemId]| {
                cand.len() == k
                    && graph
                        .induced_subgraph(cand)
                        .and_then(|sub| has_hamiltonian_path(&sub.graph))
                        .unwrap_or(false)
            };
            let res = run(&mut oracle, &mut checker, &ItemUniverse::range(graph.n()));
            field_ops += oracle.field_ops();
            res?
        };
        vertex_trace = Some(trace);
        if k == 1 {
            let witness = PathWitness::from_vertices(graph, &s)?;
            return Ok(KpathExtraction {
                witness,
                vertex_trace,
                edge_trace,
                field_ops,
            });
        }

        let sub = graph.induced_subgraph(&s)?;
        let all: Vec<ItemId> = (0..sub.graph.m() as ItemId).collect();
        let edges = if is_simple_path_edges(&sub.graph, &all, k) {
            // G[S] is itself the path; nothing to extract
            all
        } else {
            let mut oracle = EdgeInclusionOracle::new(&sub.graph, ctx);
            let mut checker = |cand: &[ItemId]| is_simple_path_edges(&sub.graph, cand, k);
            let res = run(
                &mut oracle,
                &mut checker,
                &ItemUniverse::range(sub.graph.m()),
            );
            field_ops += oracle.field_ops();
            let (w, trace) = res?;
            edge_trace = Some(trace);
            w
        };
        let original: Vec<ItemId> = edges.iter().map(|&e| sub.edge_map[e as usize]).collect();
        let witness = witness_from_edges(graph, &original)?;
        return Ok(KpathExtraction {
            witness,
            vertex_trace,
            edge_trace,
            field_ops,
        });
    }

    let mut oracle = EdgeInclusionOracle::new(graph, ctx);
    let mut checker = |cand: &[ItemId]| is_simple_path_edges(graph, cand, k);
    let res = run(&mut oracle, &mut checker, &ItemUniverse::range(graph.m()));
    field_ops += oracle.field_ops();
    let (w, trace) = res?;
    edge_trace = Some(trace);
    let witness = witness_from_edges(graph, &w)?;
    Ok(KpathExtraction {
        witness,
        vertex_trace,
        edge_trace,
        field_ops,
    })
}

fn witness_from_edges(graph: &Graph, edge_ids: &[ItemId]) -> Result<PathWitness, ExtractError> {
    let pairs: Vec<(VertexId, VertexId)> = edge_ids.iter().map(|&e| graph.edge(e)).collect();
    let seq = reconstruct_path(&pairs)?;
    Ok(PathWitness::from_vertices(graph, &seq)?)
}
