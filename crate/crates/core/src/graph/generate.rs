//! Benchmark instance families.

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError, PathWitness, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpiderVariant {
    /// Exactly one simple path on `k` vertices.
    UniqueWitness,
    /// `k` odd; every full leg is extended, so any two of them form a witness.
    ManyWitnesses,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpiderSpec {
    pub k: usize,
    pub target_n: usize,
    pub variant: SpiderVariant,
}

impl SpiderSpec {
    pub fn unique(k: usize, target_n: usize) -> Self {
        SpiderSpec {
            k,
            target_n,
            variant: SpiderVariant::UniqueWitness,
        }
    }

    pub fn many(k: usize, target_n: usize) -> Self {
        SpiderSpec {
            k,
            target_n,
            variant: SpiderVariant::ManyWitnesses,
        }
    }

    /// Vertices per plain leg, counting the shared center.
    pub fn leg_vertices(&self) -> usize {
        (self.k - 1) / 2
    }

    /// Smallest `target_n` that holds the witness-bearing legs.
    pub fn min_n(&self) -> usize {
        let l = self.leg_vertices();
        match (self.variant, self.k % 2) {
            (SpiderVariant::UniqueWitness, 1) => 1 + 2 * l,
            (SpiderVariant::UniqueWitness, _) => 1 + 2 * l + 1,
            (SpiderVariant::ManyWitnesses, _) => 1 + 2 * l,
        }
    }

    fn validate(&self) -> Result<(), GraphError> {
        if self.k < 5 {
            return Err(GraphError::Infeasible(format!(
                "spider needs k >= 5, got {}",
                self.k
            )));
        }
        if self.variant == SpiderVariant::ManyWitnesses && self.k.is_multiple_of(2) {
            return Err(GraphError::Infeasible(format!(
                "many-witness spider needs odd k, got {}",
                self.k
            )));
        }
        if self.target_n < self.min_n() {
            return Err(GraphError::Infeasible(format!(
                "k = {} needs n >= {}, got {}",
                self.k,
                self.min_n(),
                self.target_n
            )));
        }
        Ok(())
    }
}

/// A generated spider and what is known about its witnesses by construction.
#[derive(Clone, Debug)]
pub struct Spider {
    pub graph: Graph,
    pub spec: SpiderSpec,
    /// Legs long enough to end a witness.
    pub extended_legs: usize,
    /// The witness of a unique-witness spider.
    pub planted: Option<PathWitness>,
}

impl Spider {
    pub fn expected_witnesses(&self) -> u64 {
        match self.spec.variant {
            SpiderVariant::UniqueWitness => 1,
            SpiderVariant::ManyWitnesses => {
                let t = self.extended_legs as u64;
                t * (t - 1) / 2
            }
        }
    }
}

/// Paths of `(k - 1) / 2` vertices sharing one endpoint (the center).
///
/// `UniqueWitness`: for odd `k` two legs get one extra vertex, for even `k`
/// one leg gets two and another one; the two extended legs form the only
/// `k`-vertex path. `ManyWitnesses` (odd `k`): every full leg gets one extra
/// vertex. Vertices left over after the full legs form one shorter pad leg,
/// which is too short to complete a witness. Vertex ids are shuffled by
/// `seed`. The result is a tree with `target_n` vertices.
pub fn gen_spider(spec: SpiderSpec, seed: u64) -> Result<Spider, GraphError> {
    spec.validate()?;
    let n = spec.target_n;
    let l = spec.leg_vertices();
    // leg lengths in new (non-center) vertices
    let mut legs: Vec<usize> = Vec::new();
    let extended_legs;
    match spec.variant {
        SpiderVariant::UniqueWitness => {
            if spec.k % 2 == 1 {
                legs.extend([l, l]);
            } else {
                legs.extend([l + 1, l]);
            }
            extended_legs = 2;
            let mut left = n - 1 - legs.iter().sum::<usize>();
            while left >= l - 1 {
                legs.push(l - 1);
                left -= l - 1;
            }
            if left > 0 {
                legs.push(left);
            }
        }
        SpiderVariant::ManyWitnesses => {
            let full = (n - 1) / l;
            legs.extend(std::iter::repeat_n(l, full));
            extended_legs = full;
            let left = n - 1 - full * l;
            if left > 0 {
                legs.push(left);
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut label: Vec<VertexId> = (0..n as VertexId).collect();
    label.shuffle(&mut rng);

    let mut graph = Graph::empty(n);
    let mut next = 1usize;
    let mut leg_vertices: Vec<Vec<VertexId>> = Vec::with_capacity(legs.len());
    for &len in &legs {
        let mut prev = label[0];
        let mut leg = Vec::with_capacity(len);
        for _ in 0..len {
            let v = label[next];
            next += 1;
            graph.push_edge(prev, v);
            leg.push(v);
            prev = v;
        }
        leg_vertices.push(leg);
    }
    debug_assert_eq!(next, n);

    let planted = match spec.variant {
        SpiderVariant::UniqueWitness => {
            let mut seq: Vec<VertexId> = leg_vertices[0].iter().rev().copied().collect();
            seq.push(label[0]);
            seq.extend(&leg_vertices[1]);
            debug_assert_eq!(seq.len(), spec.k);
            Some(PathWitness::from_vertices(&graph, &seq)?)
        }
        SpiderVariant::ManyWitnesses => None,
    };

    Ok(Spider {
        graph,
        spec,
        extended_legs,
        planted,
    })
}

/// Uniform simple graph on `n` vertices with exactly `m` edges.
pub fn gen_random(n: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(GraphError::Infeasible(format!(
            "n = {n} admits at most {pairs} edges, asked for {m}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // pairs (u, v), u < v, numbered row by row
    let row_start = |u: usize| u * n - u * (u + 1) / 2;
    let mut graph = Graph::empty(n);
    for i in index::sample(&mut rng, pairs, m).into_iter() {
        let (mut lo, mut hi) = (0usize, n - 1);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if row_start(mid) <= i {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let u = lo;
        let v = u + 1 + (i - row_start(u));
        graph.push_edge(u as VertexId, v as VertexId);
    }
    Ok(graph)
}
