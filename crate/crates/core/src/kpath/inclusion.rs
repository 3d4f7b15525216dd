use crate::extract::{InclusionOracle, ItemId};
use crate::graph::Graph;

use super::{decide_repeated, OracleContext, OracleError, OracleVerdict};

/// Is there a `k`-path using only the vertices in `subset`?
pub fn vertex_inclusion_oracle(
    graph: &Graph,
    ctx: &mut OracleContext,
    subset: &[ItemId],
) -> Result<OracleVerdict, OracleError> {
    let sub = graph.induced_subgraph(subset)?;
    Ok(decide_repeated(&sub.graph, ctx))
}

/// Is there a `k`-path using only the edges in `subset`?
pub fn edge_inclusion_oracle(
    graph: &Graph,
    ctx: &mut OracleContext,
    subset: &[ItemId],
) -> Result<OracleVerdict, OracleError> {
    let sub = graph.edge_subgraph(subset)?;
    Ok(decide_repeated(&sub.graph, ctx))
}

macro_rules! inclusion_oracle {
    ($name:ident, $query:ident, $what:literal) => {
        #[doc = concat!("[`InclusionOracle`] over the ", $what, " ids of a graph.")]
        ///
        /// Tallies field operations and answers across calls. Queries must
        /// name valid, distinct ids; anything else panics.
        pub struct $name<'a> {
            graph: &'a Graph,
            ctx: &'a mut OracleContext,
            field_ops: u64,
            queries: u64,
        }

        impl<'a> $name<'a> {
            pub fn new(graph: &'a Graph, ctx: &'a mut OracleContext) -> Self {
                $name {
                    graph,
                    ctx,
                    field_ops: 0,
                    queries: 0,
                }
            }

            pub fn field_ops(&self) -> u64 {
                self.field_ops
            }

            pub fn queries(&self) -> u64 {
                self.queries
            }
        }

        impl InclusionOracle for $name<'_> {
            fn includes(&mut self, query: &[ItemId]) -> bool {
                let verdict = $query(self.graph, self.ctx, query)
                    .unwrap_or_else(|e| panic!("invalid inclusion query: {e}"));
                self.field_ops += verdict.field_ops;
                self.queries += 1;
                verdict.answer.is_yes()
            }

            fn error_bound(&self) -> f64 {
                self.ctx.repeated_error_bound()
            }
        }
    };
}

inclusion_oracle!(VertexInclusionOracle, vertex_inclusion_oracle, "vertex");
inclusion_oracle!(EdgeInclusionOracle, edge_inclusion_oracle, "edge");

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::gf2q::{FieldSpec, MulBackend};
    use crate::graph::{gen_spider, SpiderSpec};

    fn ctx(k: usize, seed: u64) -> OracleContext {
        let be = MulBackend::lookup(&FieldSpec::builtin(7).unwrap()).unwrap();
        OracleContext::new(Arc::new(be), k, seed).unwrap()
    }

    #[test]
    fn whole_and_empty_sets() {
        let p5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let mut c = ctx(5, 0).with_repetitions(10).unwrap();
        let all: Vec<ItemId> = (0..5).collect();
        assert!(vertex_inclusion_oracle(&p5, &mut c, &all)
            .unwrap()
            .answer
            .is_yes());
        assert!(!vertex_inclusion_oracle(&p5, &mut c, &[])
            .unwrap()
            .answer
            .is_yes());
        let edges: Vec<ItemId> = (0..4).collect();
        assert!(edge_inclusion_oracle(&p5, &mut c, &edges)
            .unwrap()
            .answer
            .is_yes());
        let mut c2 = ctx(2, 0);
        assert!(!edge_inclusion_oracle(&p5, &mut c2, &[])
            .unwrap()
            .answer
            .is_yes());
        assert!(vertex_inclusion_oracle(&p5, &mut c, &[7]).is_err());
    }

    #[test]
    fn missing_witness_item_is_always_no() {
        let s = gen_spider(SpiderSpec::unique(7, 40), 3).unwrap();
        let w = s.planted.unwrap();
        for seed in 0..10 {
            let mut c = ctx(7, seed);
            for &drop in &w.vertex_sequence {
                let y: Vec<ItemId> = (0..40).filter(|&v| v != drop).collect();
                assert!(!vertex_inclusion_oracle(&s.graph, &mut c, &y)
                    .unwrap()
                    .answer
                    .is_yes());
            }
            for &drop in &w.edge_set {
                let y: Vec<ItemId> = (0..39).filter(|&e| e != drop).collect();
                assert!(!edge_inclusion_oracle(&s.graph, &mut c, &y)
                    .unwrap()
                    .answer
                    .is_yes());
            }
        }
    }

    #[test]
    fn oracle_struct_counts() {
        let p5 = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let mut c = ctx(5, 1);
        let mut o = VertexInclusionOracle::new(&p5, &mut c);
        assert!(!o.includes(&[0, 1, 2, 3]));
        assert!(!o.includes(&[1, 2, 3, 4]));
        assert_eq!(o.queries(), 2);
        assert_eq!(o.field_ops(), 2 * super::super::dp_field_ops(4, 3, 5));
        assert!((o.error_bound() - 10.0 / 128.0).abs() < 1e-12);
    }
}
