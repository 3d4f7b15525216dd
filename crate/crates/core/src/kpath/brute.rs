use crate::gf2q::{mul_naive, FieldElement, FieldSpec};
use crate::graph::Graph;

use super::dp::Assignment;
use super::OracleError;

pub const MAX_BRUTE_EVAL_N: usize = 5;
pub const MAX_BRUTE_EVAL_K: usize = 4;

/// Expand the generating function term by term: every subset `S`, every
/// walk of `k` vertices entered from the source, every labelling
/// `[k] -> S`, one monomial each. No dynamic programming and no
/// factoring; the walk DP must agree with it exactly.
pub fn brute_force_eval(
    graph: &Graph,
    assignment: &Assignment,
    spec: &FieldSpec,
) -> Result<FieldElement, OracleError> {
    let k = assignment.k;
    if graph.n() > MAX_BRUTE_EVAL_N || k > MAX_BRUTE_EVAL_K {
        return Err(OracleError::BruteForceGuard { n: graph.n(), k });
    }
    if !assignment.fits(graph) {
        return Err(OracleError::AssignmentShape);
    }
    let mul = |a: FieldElement, b: FieldElement| mul_naive(a, b, spec);

    struct Ctx<'a, F> {
        graph: &'a Graph,
        a: &'a Assignment,
        subset: Vec<usize>,
        mul: F,
        k: usize,
    }

    // extend a partial (walk, labelling) ending at `v` with `depth` vertices
    fn extend<F: Fn(FieldElement, FieldElement) -> FieldElement>(
        c: &Ctx<'_, F>,
        v: u32,
        depth: usize,
        prod: FieldElement,
    ) -> FieldElement {
        if depth == c.k {
            return prod;
        }
        let mut sum = FieldElement::ZERO;
        for &(w, e) in c.graph.neighbors(v) {
            let with_edge = (c.mul)(prod, c.a.edge[e as usize]);
            for &l in &c.subset {
                let term = (c.mul)(with_edge, c.a.y(l, w as usize));
                sum += extend(c, w, depth + 1, term);
            }
        }
        sum
    }

    let mut total = FieldElement::ZERO;
    for bits in 0u32..(1 << k) {
        let subset: Vec<usize> = (0..k).filter(|&l| bits >> l & 1 == 1).collect();
        let c = Ctx {
            graph,
            a: assignment,
            subset,
            mul,
            k,
        };
        for v in 0..graph.n() as u32 {
            for &l in &c.subset {
                let start = (c.mul)(assignment.source[v as usize], assignment.y(l, v as usize));
                total += extend(&c, v, 1, start);
            }
        }
    }
    Ok(total)
}
