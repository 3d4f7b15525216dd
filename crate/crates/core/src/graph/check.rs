//! Deterministic witness checkers.

use std::collections::HashMap;

use super::{EdgeId, Graph, GraphError, VertexId};

/// Largest vertex count accepted by [`has_hamiltonian_path`].
pub const MAX_HAMILTONIAN_N: usize = 24;

/// True iff `edge_ids` is exactly the edge set of a simple path on `k`
/// vertices of `graph`. Out-of-range ids make the answer false.
pub fn is_simple_path_edges(graph: &Graph, edge_ids: &[EdgeId], k: usize) -> bool {
    if k == 0 || edge_ids.len() != k - 1 {
        return false;
    }
    if k == 1 {
        return graph.n() > 0;
    }
    let mut pairs = Vec::with_capacity(edge_ids.len());
    for &e in edge_ids {
        if e as usize >= graph.m() {
            return false;
        }
        pairs.push(graph.edge(e));
    }
    match reconstruct_path(&pairs) {
        Ok(seq) => seq.len() == k,
        Err(_) => false,
    }
}

/// Order the endpoints of a path's edge set into a vertex sequence that
/// starts at the smaller endpoint. Fails unless the edges form one simple
/// path (distinct edges, degrees at most 2, connected, acyclic).
pub fn reconstruct_path(edges: &[(VertexId, VertexId)]) -> Result<Vec<VertexId>, GraphError> {
    if edges.is_empty() {
        return Err(GraphError::NotAPath);
    }
    let mut adj: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
    for &(u, v) in edges {
        if u == v {
            return Err(GraphError::NotAPath);
        }
        adj.entry(u).or_default().push(v);
        adj.entry(v).or_default().push(u);
    }
    // a tree with |E| = |V| - 1 and max degree 2 is a path
    if adj.len() != edges.len() + 1 || adj.values().any(|nb| nb.len() > 2) {
        return Err(GraphError::NotAPath);
    }
    let start = adj
        .iter()
        .filter(|(_, nb)| nb.len() == 1)
        .map(|(&v, _)| v)
        .min()
        .ok_or(GraphError::NotAPath)?;
    let mut seq = vec![start];
    let mut prev = None;
    let mut cur = start;
    while let Some(&next) = adj[&cur].iter().find(|&&w| Some(w) != prev) {
        seq.push(next);
        prev = Some(cur);
        cur = next;
        if seq.len() > adj.len() {
            return Err(GraphError::NotAPath);
        }
    }
    if seq.len() != adj.len() {
        return Err(GraphError::NotAPath);
    }
    Ok(seq)
}

/// Held-Karp subset DP: `reach[mask]` is the set of vertices at which some
/// simple path covering exactly `mask` can end. `2^n * n` words of work.
pub fn has_hamiltonian_path(graph: &Graph) -> Result<bool, GraphError> {
    let n = graph.n();
    if n > MAX_HAMILTONIAN_N {
        return Err(GraphError::TooLarge {
            what: "hamiltonian path",
            detail: format!("n = {n} > {MAX_HAMILTONIAN_N}"),
        });
    }
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    if graph.m() < n - 1 || !graph.is_connected() {
        return Ok(false);
    }
    let nbr_mask: Vec<u32> = (0..n as VertexId)
        .map(|v| {
            graph
                .neighbors(v)
                .iter()
                .fold(0u32, |m, &(w, _)| m | 1 << w)
        })
        .collect();
    let full = (1u32 << n) - 1;
    let mut reach = vec![0u32; 1 << n];
    for v in 0..n {
        reach[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        let mut ends = reach[mask as usize];
        while ends != 0 {
            let v = ends.trailing_zeros();
            ends &= ends - 1;
            let mut ext = nbr_mask[v as usize] & !mask;
            while ext != 0 {
                let w = ext.trailing_zeros();
                ext &= ext - 1;
                reach[(mask | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    Ok(reach[full as usize] != 0)
}
