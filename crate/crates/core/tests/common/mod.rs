#![allow(dead_code)]

use mesonet::{LabeledGraph, NodeId, NodeType};
use proptest::prelude::*;

/// Graph with `n` periphery nodes in community `x % communities`.
pub fn build(n: u32, communities: u32, edges: &[(NodeId, NodeId, f64)]) -> LabeledGraph {
    let mut g = LabeledGraph::new();
    for x in 0..n {
        g.add_node(x % communities.max(1), NodeType::Periphery);
    }
    for &(u, v, w) in edges {
        g.add_edge(u, v, w).unwrap();
    }
    g
}

/// Simple undirected edges over `n` nodes, no self-loops, no duplicates.
pub fn edge_set(n: u32, max_edges: usize) -> impl Strategy<Value = Vec<(NodeId, NodeId)>> {
    proptest::collection::btree_set((0..n, 0..n), 0..=max_edges).prop_map(|pairs| {
        let mut seen = std::collections::BTreeSet::new();
        pairs
            .into_iter()
            .filter(|&(u, v)| u != v)
            .map(|(u, v)| (u.min(v), u.max(v)))
            .filter(|e| seen.insert(*e))
            .collect()
    })
}

/// `(node count, unit-weight edges)` with up to `max_nodes` nodes.
pub fn unit_graph(max_nodes: u32) -> impl Strategy<Value = (u32, Vec<(NodeId, NodeId)>)> {
    (1..=max_nodes).prop_flat_map(move |n| {
        let max_edges = (n * (n - 1) / 2) as usize;
        (Just(n), edge_set(n, max_edges))
    })
}

/// `(node count, weighted edges)`; weights in `[0.1, 10)`.
pub fn weighted_graph(max_nodes: u32) -> impl Strategy<Value = (u32, Vec<(NodeId, NodeId, f64)>)> {
    unit_graph(max_nodes).prop_flat_map(|(n, edges)| {
        let k = edges.len();
        (Just(n), Just(edges), proptest::collection::vec(0.1f64..10.0, k))
            .prop_map(|(n, e, w)| (n, e.into_iter().zip(w).map(|((u, v), w)| (u, v, w)).collect()))
    })
}

pub fn unit(edges: &[(NodeId, NodeId)]) -> Vec<(NodeId, NodeId, f64)> {
    edges.iter().map(|&(u, v)| (u, v, 1.0)).collect()
}

/// Exact inverse-CDF sampler for the discrete power law
/// `P(k) ∝ k^-gamma`, `k >= k_min`. Probabilities are tabulated by direct
/// summation up to `TABLE` terms beyond `k_min`; the remaining mass (under
/// 1e-9 for gamma = 2.5) is sampled from the matching continuous tail.
pub struct DiscretePowerLaw {
    k_min: u64,
    gamma: f64,
    cdf: Vec<f64>,
    tail_mass: f64,
}

impl DiscretePowerLaw {
    const TABLE: usize = 1 << 20;

    pub fn new(gamma: f64, k_min: u64) -> Self {
        let mut cdf = Vec::with_capacity(Self::TABLE);
        let mut acc = 0.0;
        for i in 0..Self::TABLE {
            acc += ((k_min + i as u64) as f64).powf(-gamma);
            cdf.push(acc);
        }
        let edge = (k_min + Self::TABLE as u64) as f64 - 0.5;
        let tail = edge.powf(1.0 - gamma) / (gamma - 1.0);
        let z = acc + tail;
        for c in &mut cdf {
            *c /= z;
        }
        Self { k_min, gamma, cdf, tail_mass: tail / z }
    }

    pub fn sample(&self, rng: &mut impl rand::Rng) -> u64 {
        let u: f64 = rng.gen();
        let i = self.cdf.partition_point(|&c| c <= u);
        if i < self.cdf.len() {
            return self.k_min + i as u64;
        }
        // continuous tail beyond the table
        let edge = (self.k_min + Self::TABLE as u64) as f64 - 0.5;
        let v = (1.0 - u) / self.tail_mass;
        (edge * v.max(f64::MIN_POSITIVE).powf(-1.0 / (self.gamma - 1.0)) + 0.5).floor() as u64
    }
}
