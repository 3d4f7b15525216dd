//! Inclusion-exclusion walk DP over GF(2^q).
//!
//! Add a source `s` joined to every vertex. With edge variables `x_e`
//! (including the source edges) and label variables `y[l][v]`, the value
//!
//! ```text
//!   sum over nonempty S ⊆ {1..k} of
//!     sum over walks s, v1, ..., vk of  x_{s v1} * prod x_{v_i v_{i+1}} * prod z_S(v_i)
//!   where z_S(v) = sum_{l in S} y[l][v]
//! ```
//!
//! reduces, in characteristic 2, to a sum over walks with a *bijective*
//! labelling; walks that revisit a vertex cancel in pairs (swap the labels
//! at the first repeated pair of positions). What survives has one monomial
//! per (directed simple path, bijection), so the polynomial has degree `2k`
//! and is nonzero exactly when a `k`-vertex path exists.
//!
//! Subsets are visited in Gray-code order so each `z_S` update is one xor
//! per vertex.

use rand::Rng;

use crate::gf2q::{random_element, FieldElement, FieldSpec, MulBackend, MulVisitor, Multiplier};
use crate::graph::Graph;

/// One point at which the generating function is evaluated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub k: usize,
    /// `x_{s v}` per vertex.
    pub source: Vec<FieldElement>,
    /// `x_e` per edge id.
    pub edge: Vec<FieldElement>,
    /// `y[l][v]` stored label-major at `l * n + v`, labels `0..k`.
    pub label: Vec<FieldElement>,
}

impl Assignment {
    /// Independent uniform values for every variable.
    pub fn random<R: Rng + ?Sized>(graph: &Graph, k: usize, spec: &FieldSpec, rng: &mut R) -> Self {
        let n = graph.n();
        let mut draw = |len: usize| {
            (0..len)
                .map(|_| random_element(rng, spec))
                .collect::<Vec<_>>()
        };
        let source = draw(n);
        let edge = draw(graph.m());
        let label = draw(k * n);
        Assignment {
            k,
            source,
            edge,
            label,
        }
    }

    pub fn y(&self, label: usize, v: usize) -> FieldElement {
        self.label[label * self.source.len() + v]
    }

    pub(crate) fn fits(&self, graph: &Graph) -> bool {
        self.source.len() == graph.n()
            && self.edge.len() == graph.m()
            && self.label.len() == self.k * graph.n()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub value: FieldElement,
    pub field_ops: u64,
}

/// Field additions plus multiplications performed by [`evaluate`].
pub fn dp_field_ops(n: usize, m: usize, k: usize) -> u64 {
    if k == 0 {
        return 0;
    }
    let per_subset = 3 * n as u64 + (k as u64 - 1) * (4 * m as u64 + n as u64);
    ((1u64 << k) - 1) * per_subset
}

/// Evaluate the walk generating function at `assignment` with `backend`.
///
/// # Panics
/// If the assignment was drawn for a graph of a different shape.
pub fn evaluate(graph: &Graph, assignment: &Assignment, backend: &MulBackend) -> Evaluation {
    assert!(
        assignment.fits(graph),
        "assignment does not match the graph"
    );
    let value = backend.dispatch(WalkDp { graph, assignment });
    Evaluation {
        value: FieldElement(value),
        field_ops: dp_field_ops(graph.n(), graph.m(), assignment.k),
    }
}

struct WalkDp<'a> {
    graph: &'a Graph,
    assignment: &'a Assignment,
}

impl MulVisitor for WalkDp<'_> {
    type Output = u64;

    fn visit<M: Multiplier>(self, mul: M) -> u64 {
        let graph = self.graph;
        let a = self.assignment;
        let (n, k) = (graph.n(), a.k);
        if k == 0 || n == 0 {
            return 0;
        }

        // CSR adjacency with the edge variable pre-scaled for the multiplier
        let mut offsets = Vec::with_capacity(n + 1);
        let mut nbr = Vec::with_capacity(2 * graph.m());
        let mut weight = Vec::with_capacity(2 * graph.m());
        offsets.push(0usize);
        for v in 0..n as u32 {
            for &(w, e) in graph.neighbors(v) {
                nbr.push(w as usize);
                weight.push(mul.scale(a.edge[e as usize].0));
            }
            offsets.push(nbr.len());
        }
        let source: Vec<M::Scaled> = a.source.iter().map(|x| mul.scale(x.0)).collect();

        let mut z = vec![0u64; n];
        let mut cur = vec![0u64; n];
        let mut next = vec![0u64; n];
        let mut acc = 0u64;

        for step in 1u64..(1u64 << k) {
            let flip = step.trailing_zeros() as usize;
            let y = &a.label[flip * n..(flip + 1) * n];
            for (zv, yv) in z.iter_mut().zip(y) {
                *zv ^= yv.0;
            }

            for ((c, &sv), &zv) in cur.iter_mut().zip(&source).zip(&z) {
                *c = mul.mul_scaled(sv, zv);
            }
            for _ in 1..k {
                for ((out, span), &zv) in next.iter_mut().zip(offsets.windows(2)).zip(&z) {
                    let (lo, hi) = (span[0], span[1]);
                    let mut s = 0u64;
                    for (&w, &u) in weight[lo..hi].iter().zip(&nbr[lo..hi]) {
                        s ^= mul.mul_scaled(w, cur[u]);
                    }
                    *out = mul.mul(zv, s);
                }
                std::mem::swap(&mut cur, &mut next);
            }
            for &t in &cur {
                acc ^= t;
            }
        }
        acc
    }
}
