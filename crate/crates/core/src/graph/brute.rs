//! Exhaustive k-path search for small instances. Ground truth for tests.

use super::{Graph, GraphError, PathWitness, VertexId};

pub const MAX_BRUTE_N: usize = 64;
pub const MAX_BRUTE_K: usize = 10;

fn guard(graph: &Graph, k: usize, what: &'static str) -> Result<(), GraphError> {
    if graph.n() > MAX_BRUTE_N || k > MAX_BRUTE_K {
        return Err(GraphError::TooLarge {
            what,
            detail: format!(
                "n = {}, k = {k}; limits n <= {MAX_BRUTE_N}, k <= {MAX_BRUTE_K}",
                graph.n()
            ),
        });
    }
    Ok(())
}

/// Depth-first enumeration of simple paths, calling `visit` on every path of
/// exactly `k` vertices whose first vertex is smaller than its last (so each
/// undirected path is seen once). `visit` returns false to stop early.
fn for_each_path(graph: &Graph, k: usize, visit: &mut dyn FnMut(&[VertexId]) -> bool) {
    fn dfs(
        graph: &Graph,
        k: usize,
        stack: &mut Vec<VertexId>,
        used: u64,
        visit: &mut dyn FnMut(&[VertexId]) -> bool,
    ) -> bool {
        if stack.len() == k {
            if k == 1 || stack[0] < stack[k - 1] {
                return visit(stack);
            }
            return true;
        }
        let last = *stack.last().unwrap();
        for &(w, _) in graph.neighbors(last) {
            if used >> w & 1 == 0 {
                stack.push(w);
                let go_on = dfs(graph, k, stack, used | 1 << w, visit);
                stack.pop();
                if !go_on {
                    return false;
                }
            }
        }
        true
    }

    if k == 0 {
        return;
    }
    let mut stack = Vec::with_capacity(k);
    for v in 0..graph.n() as VertexId {
        stack.push(v);
        let go_on = dfs(graph, k, &mut stack, 1 << v, visit);
        stack.pop();
        if !go_on {
            return;
        }
    }
}

/// Some simple path on `k` vertices, or `None`. Deterministic: the first
/// path in DFS order from the lowest start vertex.
pub fn brute_force_kpath(graph: &Graph, k: usize) -> Result<Option<PathWitness>, GraphError> {
    guard(graph, k, "brute-force k-path")?;
    let mut found = None;
    for_each_path(graph, k, &mut |p| {
        found = Some(p.to_vec());
        false
    });
    found
        .map(|seq| PathWitness::from_vertices(graph, &seq))
        .transpose()
}

/// Every simple path on `k` vertices, each once, smaller endpoint first,
/// sorted by vertex sequence.
pub fn enumerate_witnesses(graph: &Graph, k: usize) -> Result<Vec<PathWitness>, GraphError> {
    guard(graph, k, "witness enumeration")?;
    let mut out = Vec::new();
    let mut err = None;
    for_each_path(
        graph,
        k,
        &mut |p| match PathWitness::from_vertices(graph, p) {
            Ok(w) => {
                out.push(w);
                true
            }
            Err(e) => {
                err = Some(e);
                false
            }
        },
    );
    if let Some(e) = err {
        return Err(e);
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_random, tests::path_graph};

    #[test]
    fn brute_examples() {
        let p5 = path_graph(5);
        let w = brute_force_kpath(&p5, 5).unwrap().unwrap();
        assert_eq!(w.vertex_sequence, vec![0, 1, 2, 3, 4]);
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(brute_force_kpath(&star, 4).unwrap(), None);
        assert!(brute_force_kpath(&p5, 11).is_err());
        assert!(brute_force_kpath(&Graph::empty(65), 3).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let p5 = path_graph(5);
        let ws = enumerate_witnesses(&p5, 3).unwrap();
        let seqs: Vec<_> = ws.iter().map(|w| w.vertex_sequence.clone()).collect();
        assert_eq!(seqs, vec![vec![0, 1, 2], vec![1, 2, 3], vec![2, 3, 4]]);

        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(enumerate_witnesses(&tri, 3).unwrap().len(), 3);

        assert!(enumerate_witnesses(&Graph::empty(4), 2).unwrap().is_empty());
        assert_eq!(enumerate_witnesses(&Graph::empty(4), 1).unwrap().len(), 4);
    }

    #[test]
    fn brute_agrees_with_enumeration() {
        for seed in 0..200u64 {
            let n = 3 + (seed % 8) as usize;
            let m = ((seed * 13) as usize) % (n * (n - 1) / 2 + 1);
            let k = 2 + (seed % 5) as usize;
            let g = gen_random(n, m, seed).unwrap();
            let all = enumerate_witnesses(&g, k).unwrap();
            let one = brute_force_kpath(&g, k).unwrap();
            assert_eq!(one.is_some(), !all.is_empty(), "seed {seed}");
            if let Some(w) = one {
                assert!(all.contains(&w));
            }
        }
    }
}
