//! Simple undirected graphs with stable vertex and edge ids, instance
//! generators, witness checkers and exhaustive ground-truth search.
//!
//! Text format: a header line `n m`, then `m` lines `u v` (0-indexed,
//! whitespace separated). Edge ids are assigned in file order.

mod brute;
mod check;
mod generate;

use std::collections::HashSet;
use std::fmt;
use std::io::{self, BufRead, Write};

use thiserror::Error;

pub use brute::{brute_force_kpath, enumerate_witnesses, MAX_BRUTE_K, MAX_BRUTE_N};
pub use check::{has_hamiltonian_path, is_simple_path_edges, reconstruct_path, MAX_HAMILTONIAN_N};
pub use generate::{gen_random, gen_spider, Spider, SpiderSpec, SpiderVariant};

pub type VertexId = u32;
pub type EdgeId = u32;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: malformed input `{content}`")]
    Malformed { line: usize, content: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: u64, n: usize },
    #[error("line {line}: duplicate edge {{{u}, {v}}}")]
    DuplicateEdge {
        line: usize,
        u: VertexId,
        v: VertexId,
    },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: VertexId },
    #[error("expected {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("vertex id {0} out of range")]
    UnknownVertex(u64),
    #[error("edge id {0} out of range")]
    EdgeOutOfRange(u64),
    #[error("{what}: instance too large ({detail})")]
    TooLarge { what: &'static str, detail: String },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("edges do not form a simple path")]
    NotAPath,
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Undirected simple graph. Edge `i` is `edges()[i]`, stored in the
/// orientation it was added with.
#[derive(Clone, Debug)]
pub struct Graph {
    edges: Vec<(VertexId, VertexId)>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.edges == other.edges && self.adjacency.len() == other.adjacency.len()
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
        }
    }

    /// Build a graph, rejecting self-loops, duplicates and bad endpoints.
    /// Errors report the 1-based position of the offending edge as `line`.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self, GraphError> {
        let mut g = Graph::empty(n);
        let mut seen = HashSet::new();
        for (i, (u, v)) in edges.into_iter().enumerate() {
            g.check_and_push(u as u64, v as u64, i + 1, &mut seen)?;
        }
        Ok(g)
    }

    fn check_and_push(
        &mut self,
        u: u64,
        v: u64,
        line: usize,
        seen: &mut HashSet<(VertexId, VertexId)>,
    ) -> Result<(), GraphError> {
        let n = self.n();
        for x in [u, v] {
            if x >= n as u64 {
                return Err(GraphError::VertexOutOfRange { line, vertex: x, n });
            }
        }
        let (u, v) = (u as VertexId, v as VertexId);
        if u == v {
            return Err(GraphError::SelfLoop { line, vertex: u });
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(GraphError::DuplicateEdge { line, u, v });
        }
        self.push_edge(u, v);
        Ok(())
    }

    /// Append an edge without validation. Callers guarantee simplicity.
    pub(crate) fn push_edge(&mut self, u: VertexId, v: VertexId) -> EdgeId {
        let id = self.edges.len() as EdgeId;
        self.edges.push((u, v));
        self.adjacency[u as usize].push((v, id));
        self.adjacency[v as usize].push((u, id));
        id
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> (VertexId, VertexId) {
        self.edges[id as usize]
    }

    /// `(neighbor, edge id)` pairs of `v`, in insertion order.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v as usize]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v as usize].len()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        let (a, b) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.neighbors(a)
            .iter()
            .find(|&&(w, _)| w == b)
            .map(|&(_, e)| e)
    }

    pub fn is_connected(&self) -> bool {
        if self.n() == 0 {
            return true;
        }
        let mut seen = vec![false; self.n()];
        let mut stack = vec![0 as VertexId];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n()
    }

    /// Parse the `n m` / `u v` text format.
    pub fn parse<R: BufRead>(reader: R) -> Result<Self, GraphError> {
        let mut lines = reader.lines().enumerate();
        let (n, m) = loop {
            let Some((i, line)) = lines.next() else {
                return Err(GraphError::Malformed {
                    line: 1,
                    content: String::new(),
                });
            };
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            break parse_pair(&line, i + 1)?;
        };
        let n = usize::try_from(n).map_err(|_| GraphError::TooLarge {
            what: "parse",
            detail: format!("n = {n}"),
        })?;
        let mut g = Graph::empty(n);
        let mut seen = HashSet::new();
        let mut found = 0usize;
        for (i, line) in lines {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            if found == m as usize {
                return Err(GraphError::EdgeCount {
                    expected: m as usize,
                    found: found + 1,
                });
            }
            let (u, v) = parse_pair(&line, i + 1)?;
            g.check_and_push(u, v, i + 1, &mut seen)?;
            found += 1;
        }
        if found != m as usize {
            return Err(GraphError::EdgeCount {
                expected: m as usize,
                found,
            });
        }
        Ok(g)
    }

    pub fn parse_str(text: &str) -> Result<Self, GraphError> {
        Graph::parse(text.as_bytes())
    }

    pub fn write_to<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "{} {}", self.n(), self.m())?;
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Subgraph induced by `vertices` (duplicates ignored). Vertex `i` of the
    /// result is the `i`-th distinct entry of `vertices`; edges keep the
    /// relative order of their ids in `self`.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Result<SubGraph, GraphError> {
        const ABSENT: u32 = u32::MAX;
        let mut local = vec![ABSENT; self.n()];
        let mut vertex_map = Vec::with_capacity(vertices.len());
        for &v in vertices {
            let slot = local
                .get_mut(v as usize)
                .ok_or(GraphError::UnknownVertex(v as u64))?;
            if *slot == ABSENT {
                *slot = vertex_map.len() as u32;
                vertex_map.push(v);
            }
        }
        let mut kept: Vec<EdgeId> = Vec::new();
        for &v in &vertex_map {
            for &(w, e) in self.neighbors(v) {
                if v < w && local[w as usize] != ABSENT {
                    kept.push(e);
                }
            }
        }
        kept.sort_unstable();
        let mut graph = Graph::empty(vertex_map.len());
        for &e in &kept {
            let (u, v) = self.edge(e);
            graph.push_edge(local[u as usize], local[v as usize]);
        }
        Ok(SubGraph {
            graph,
            vertex_map,
            edge_map: kept,
        })
    }

    /// Spanning subgraph keeping only the edges in `edge_ids` (duplicates
    /// ignored, id order preserved). Vertex ids are unchanged.
    pub fn edge_subgraph(&self, edge_ids: &[EdgeId]) -> Result<SubGraph, GraphError> {
        let mut kept = edge_ids.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if let Some(&bad) = kept.last().filter(|&&e| e as usize >= self.m()) {
            return Err(GraphError::EdgeOutOfRange(bad as u64));
        }
        let mut graph = Graph::empty(self.n());
        for &e in &kept {
            let (u, v) = self.edge(e);
            graph.push_edge(u, v);
        }
        Ok(SubGraph {
            graph,
            vertex_map: (0..self.n() as VertexId).collect(),
            edge_map: kept,
        })
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n(), self.m())?;
        for &(u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

fn parse_pair(line: &str, lineno: usize) -> Result<(u64, u64), GraphError> {
    let malformed = || GraphError::Malformed {
        line: lineno,
        content: line.to_string(),
    };
    let mut it = line.split_whitespace();
    let a = it
        .next()
        .and_then(|t| t.parse::<u64>().ok())
        .ok_or_else(malformed)?;
    let b = it
        .next()
        .and_then(|t| t.parse::<u64>().ok())
        .ok_or_else(malformed)?;
    if it.next().is_some() {
        return Err(malformed());
    }
    Ok((a, b))
}

/// A subgraph together with the ids its vertices and edges had in the parent.
#[derive(Clone, Debug)]
pub struct SubGraph {
    pub graph: Graph,
    /// `vertex_map[local] = parent vertex id`
    pub vertex_map: Vec<VertexId>,
    /// `edge_map[local] = parent edge id`
    pub edge_map: Vec<EdgeId>,
}

/// A simple path on `k` vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PathWitness {
    /// Vertices in path order, smaller endpoint first.
    pub vertex_sequence: Vec<VertexId>,
    /// The `k - 1` edge ids along the path, sorted.
    pub edge_set: Vec<EdgeId>,
}

impl PathWitness {
    /// Build a witness from a vertex sequence, checking adjacency and
    /// distinctness, and orient it with the smaller endpoint first.
    pub fn from_vertices(graph: &Graph, vertices: &[VertexId]) -> Result<Self, GraphError> {
        if vertices.is_empty() || vertices.iter().any(|&v| v as usize >= graph.n()) {
            return Err(GraphError::NotAPath);
        }
        let distinct: HashSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(GraphError::NotAPath);
        }
        let mut edge_set = vertices
            .windows(2)
            .map(|w| graph.edge_between(w[0], w[1]).ok_or(GraphError::NotAPath))
            .collect::<Result<Vec<_>, _>>()?;
        edge_set.sort_unstable();
        let mut vertex_sequence = vertices.to_vec();
        if vertex_sequence.last() < vertex_sequence.first() {
            vertex_sequence.reverse();
        }
        Ok(PathWitness {
            vertex_sequence,
            edge_set,
        })
    }

    /// Number of vertices.
    pub fn k(&self) -> usize {
        self.vertex_sequence.len()
    }
}

impl fmt::Display for PathWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("path")?;
        for v in &self.vertex_sequence {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn path_graph(n: usize) -> Graph {
        Graph::from_edges(n, (1..n as u32).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn parse_examples() {
        let g = Graph::parse_str("2 1\n0 1").unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.edges(), &[(0, 1)]);
        assert!(matches!(
            Graph::parse_str("2 1\n0 0"),
            Err(GraphError::SelfLoop { line: 2, vertex: 0 })
        ));
    }

    #[test]
    fn parse_errors_are_distinct() {
        assert!(matches!(
            Graph::parse_str("3 1\n0 x"),
            Err(GraphError::Malformed { line: 2, .. })
        ));
        assert!(matches!(
            Graph::parse_str("3 1\n0 1 2"),
            Err(GraphError::Malformed { .. })
        ));
        assert!(matches!(
            Graph::parse_str("3 1\n0 3"),
            Err(GraphError::VertexOutOfRange { vertex: 3, .. })
        ));
        assert!(matches!(
            Graph::parse_str("3 2\n0 1\n1 0"),
            Err(GraphError::DuplicateEdge { line: 3, .. })
        ));
        assert!(matches!(
            Graph::parse_str("3 2\n0 1"),
            Err(GraphError::EdgeCount {
                expected: 2,
                found: 1
            })
        ));
        assert!(matches!(
            Graph::parse_str("3 1\n0 1\n1 2"),
            Err(GraphError::EdgeCount { expected: 1, .. })
        ));
        assert!(matches!(
            Graph::parse_str(""),
            Err(GraphError::Malformed { .. })
        ));
    }

    #[test]
    fn serialize_format() {
        let g = path_graph(3);
        assert_eq!(g.to_text(), "3 2\n0 1\n1 2\n");
        let mut buf = Vec::new();
        g.write_to(&mut buf).unwrap();
        assert_eq!(Graph::parse(&buf[..]).unwrap(), g);
    }

    #[test]
    fn induced_examples() {
        let p5 = path_graph(5);
        let all: Vec<_> = (0..5).collect();
        let sub = p5.induced_subgraph(&all).unwrap();
        assert_eq!(sub.graph, p5);

        let mid = p5.induced_subgraph(&[1, 2, 3]).unwrap();
        assert_eq!(mid.graph, path_graph(3));
        assert_eq!(mid.vertex_map, vec![1, 2, 3]);
        assert_eq!(mid.edge_map, vec![1, 2]);

        assert!(p5.induced_subgraph(&[7]).is_err());
        assert_eq!(p5.induced_subgraph(&[]).unwrap().graph.n(), 0);
    }

    #[test]
    fn edge_subgraph_examples() {
        let p5 = path_graph(5);
        let none = p5.edge_subgraph(&[]).unwrap();
        assert_eq!(none.graph.n(), 5);
        assert_eq!(none.graph.m(), 0);
        let some = p5.edge_subgraph(&[3, 0, 3]).unwrap();
        assert_eq!(some.graph.edges(), &[(0, 1), (3, 4)]);
        assert_eq!(some.edge_map, vec![0, 3]);
        assert!(matches!(
            p5.edge_subgraph(&[4]),
            Err(GraphError::EdgeOutOfRange(4))
        ));
    }

    #[test]
    fn witness_orientation() {
        let p5 = path_graph(5);
        let w = PathWitness::from_vertices(&p5, &[3, 2, 1]).unwrap();
        assert_eq!(w.vertex_sequence, vec![1, 2, 3]);
        assert_eq!(w.edge_set, vec![1, 2]);
        assert_eq!(w.to_string(), "path 1 2 3");
        assert!(PathWitness::from_vertices(&p5, &[0, 2]).is_err());
        assert!(PathWitness::from_vertices(&p5, &[0, 1, 0]).is_err());
    }
}
