//! Undirected weighted graph carrying a community id and a core/periphery
//! flag on every node.
//!
//! Node ids are dense and assigned in creation order, so a node's id doubles
//! as its age. Adjacency is kept per node in insertion order, which makes
//! every traversal (and therefore every seeded random choice made while
//! walking neighborhoods) reproducible.
//!
//! The weight of edge `(u, v)` is stored as `base(u, v) * scale(u) *
//! scale(v)`, with the base kept on both endpoints and every scale starting
//! at 1. Multiplying all edges around a node then costs a single update of
//! its scale, which is what weight redistribution in the growth models does
//! on every new edge. Graphs built edge by edge keep unit scales, so their
//! weights are exactly the values that were added.

use indexmap::IndexMap;
use rustc_hash::FxBuildHasher;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = u32;

// neighbor -> base weight
type Neighborhood = IndexMap<NodeId, f64, FxBuildHasher>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeType {
    Core,
    Periphery,
}

/// Degree, strength and the intra/inter community split of a node.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeStats {
    pub degree: usize,
    pub strength: f64,
    pub intra_degree: usize,
    pub inter_degree: usize,
}

#[derive(Debug, Clone, Default)]
pub struct LabeledGraph {
    adj: Vec<Neighborhood>,
    scale: Vec<f64>,
    community: Vec<u32>,
    node_type: Vec<NodeType>,
    edges: usize,
}

impl LabeledGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(nodes: usize) -> Self {
        Self {
            adj: Vec::with_capacity(nodes),
            scale: Vec::with_capacity(nodes),
            community: Vec::with_capacity(nodes),
            node_type: Vec::with_capacity(nodes),
            edges: 0,
        }
    }

    pub fn add_node(&mut self, community: u32, node_type: NodeType) -> NodeId {
        let id = self.adj.len() as NodeId;
        self.adj.push(Neighborhood::default());
        self.scale.push(1.0);
        self.community.push(community);
        self.node_type.push(node_type);
        id
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> {
        0..self.adj.len() as NodeId
    }

    pub fn contains(&self, x: NodeId) -> bool {
        (x as usize) < self.adj.len()
    }

    fn check(&self, x: NodeId) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(Error::UnknownNode(x))
        }
    }

    #[inline]
    fn pair_scale(&self, u: NodeId, v: NodeId) -> f64 {
        self.scale[u as usize] * self.scale[v as usize]
    }

    /// Adds an undirected edge, or reinforces an existing one by `w`.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId, w: f64) -> Result<()> {
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.check(u)?;
        self.check(v)?;
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::InvalidWeight(w));
        }
        let base = w / self.pair_scale(u, v);
        match self.adj[u as usize].get_mut(&v) {
            Some(existing) => {
                *existing += base;
                let updated = *existing;
                self.adj[v as usize][&u] = updated;
            }
            None => {
                self.adj[u as usize].insert(v, base);
                self.adj[v as usize].insert(u, base);
                self.edges += 1;
            }
        }
        Ok(())
    }

    pub fn weight(&self, u: NodeId, v: NodeId) -> Option<f64> {
        let base = self.adj.get(u as usize)?.get(&v)?;
        Some(base * self.pair_scale(u, v))
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.adj.get(u as usize).is_some_and(|nb| nb.contains_key(&v))
    }

    /// Neighbors of `x` with the connecting edge weight, in insertion order.
    ///
    /// Panics if `x` is not a node of the graph.
    pub fn neighbors(&self, x: NodeId) -> impl ExactSizeIterator<Item = (NodeId, f64)> + Clone + '_ {
        let sx = self.scale[x as usize];
        let scale = &self.scale;
        self.adj[x as usize]
            .iter()
            // scales multiply first so both directions round identically
            .map(move |(&y, &b)| (y, b * (sx * scale[y as usize])))
    }

    /// The `i`-th neighbor of `x` in insertion order.
    pub(crate) fn neighbor_at(&self, x: NodeId, i: usize) -> NodeId {
        *self.adj[x as usize].get_index(i).expect("neighbor index in range").0
    }

    pub fn degree(&self, x: NodeId) -> usize {
        self.adj[x as usize].len()
    }

    pub fn strength(&self, x: NodeId) -> f64 {
        self.neighbors(x).map(|(_, w)| w).sum()
    }

    pub fn community(&self, x: NodeId) -> u32 {
        self.community[x as usize]
    }

    pub fn node_type(&self, x: NodeId) -> NodeType {
        self.node_type[x as usize]
    }

    pub fn is_core(&self, x: NodeId) -> bool {
        self.node_type(x) == NodeType::Core
    }

    pub fn set_node_type(&mut self, x: NodeId, t: NodeType) {
        self.node_type[x as usize] = t;
    }

    pub fn stats(&self, x: NodeId) -> Result<NodeStats> {
        self.check(x)?;
        let own = self.community(x);
        let mut strength = 0.0;
        let mut intra = 0;
        for (y, w) in self.neighbors(x) {
            strength += w;
            if self.community(y) == own {
                intra += 1;
            }
        }
        let degree = self.degree(x);
        Ok(NodeStats {
            degree,
            strength,
            intra_degree: intra,
            inter_degree: degree - intra,
        })
    }

    /// Every undirected edge once, as `(u, v, w)` with `u < v`, ordered by `u`
    /// and then by insertion order of `v` into `u`'s neighborhood.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, f64)> + '_ {
        self.nodes().flat_map(move |u| self.neighbors(u).filter(move |&(v, _)| u < v).map(move |(v, w)| (u, v, w)))
    }

    pub fn max_weight(&self) -> Option<f64> {
        self.edges().map(|(_, _, w)| w).reduce(f64::max)
    }

    pub fn core_nodes(&self) -> Vec<NodeId> {
        self.nodes().filter(|&x| self.is_core(x)).collect()
    }

    /// Multiplies every edge incident to `y` (except the one to `exclude`) by
    /// `factor`, reporting each `(neighbor, old, new)` weight to `on_change`.
    pub(crate) fn scale_incident(
        &mut self,
        y: NodeId,
        factor: f64,
        exclude: Option<NodeId>,
        mut on_change: impl FnMut(NodeId, f64, f64),
    ) {
        let old_scale = self.scale[y as usize];
        let new_scale = old_scale * factor;
        for (&z, &b) in &self.adj[y as usize] {
            if Some(z) == exclude {
                continue;
            }
            let sz = self.scale[z as usize];
            on_change(z, b * (old_scale * sz), b * (new_scale * sz));
        }
        self.scale[y as usize] = new_scale;
        if let Some(x) = exclude {
            if let Some(b) = self.adj[y as usize].get_mut(&x) {
                *b /= factor;
                let kept = *b;
                self.adj[x as usize][&y] = kept;
            }
        }
    }

    /// Checks the structural invariants: symmetric adjacency with equal
    /// weights, no self-loops, positive weights and a consistent edge count.
    pub fn validate(&self) -> Result<()> {
        let mut half_edges = 0usize;
        for u in self.nodes() {
            for (v, w) in self.neighbors(u) {
                if u == v {
                    return Err(Error::SelfLoop(u));
                }
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::InvalidWeight(w));
                }
                let back = self.adj.get(v as usize).and_then(|m| m.get(&u));
                if back.map(|b| b.to_bits()) != self.adj[u as usize].get(&v).map(|b| b.to_bits()) {
                    return Err(Error::Format(format!("asymmetric adjacency between {u} and {v}")));
                }
                half_edges += 1;
            }
        }
        if half_edges != 2 * self.edges {
            return Err(Error::Format(format!(
                "edge count {} disagrees with adjacency ({} half-edges)",
                self.edges, half_edges
            )));
        }
        Ok(())
    }
}

/// Graphs are equal when they hold the same nodes with the same labels and
/// the same weighted edges; insertion order does not matter.
impl PartialEq for LabeledGraph {
    fn eq(&self, other: &Self) -> bool {
        self.edges == other.edges
            && self.community == other.community
            && self.node_type == other.node_type
            && self.nodes().all(|u| {
                self.degree(u) == other.degree(u)
                    && self.neighbors(u).all(|(v, w)| other.weight(u, v) == Some(w))
            })
    }
}
