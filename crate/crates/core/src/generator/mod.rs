//! Growth models for scale-free networks with community and core-periphery
//! structure.
//!
//! Both models start from a seed of `c` cliques of `n0` nodes whose
//! cross-community pairs are wired with probability `p`; every seed node is
//! core. Each time step then
//!
//! 1. adds a periphery node to a uniformly chosen community, linking it to
//!    `round(m f)` nodes of its community (proportional to intra-degree or
//!    intra-strength) and `m - round(m f)` nodes elsewhere (proportional to
//!    inter-degree or inter-strength);
//! 2. with probability `q` promotes a periphery node, chosen proportional
//!    to degree or strength, to the core and links it to each existing core
//!    node with probability `p`;
//! 3. gives every node a chance `r` to close a triangle through one of its
//!    neighbors.
//!
//! Model B additionally weights edges and, whenever an existing node gains
//! an edge, spreads an extra load `delta` over its existing edges in
//! proportion to their weights (BBV redistribution).
//!
//! All randomness comes from a ChaCha8 stream seeded with
//! [`ModelParams::seed`] on stream 0 (see [`rng_for`]), consumed in a fixed
//! order, so a parameter set always produces the same graph.

mod index;
pub mod params;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, NodeId, NodeType};

use index::{draw_weighted, AttachmentIndex};
pub use params::{BbvScope, Model, ModelParams, Preference, TriadWeighting};

/// Stream carrying all draws of a generation run.
pub const GENERATION_STREAM: u64 = 0;

/// ChaCha8 generator for `seed` positioned on an independent `stream`.
///
/// Stream [`GENERATION_STREAM`] drives the models; other stream numbers are
/// free for auxiliary randomness (test fixtures, sampling experiments) that
/// must not perturb a generation run sharing the same seed.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Seed graph: `c` cliques of size `n0`, cross-community pairs linked with
/// probability `p`, every node core, every edge of the model's initial weight.
pub fn build_seed<R: Rng + ?Sized>(params: &ModelParams, rng: &mut R) -> Result<LabeledGraph> {
    params.validate()?;
    let w0 = params.edge_weight();
    let n0 = params.n0;
    let total = params.seed_nodes() as NodeId;
    let mut g = LabeledGraph::with_capacity(params.final_nodes() as usize);
    for x in 0..total {
        g.add_node(x / n0, NodeType::Core);
    }
    for u in 0..total {
        for v in (u + 1)..total {
            if u / n0 == v / n0 || rng.gen::<f64>() < params.p {
                g.add_edge(u, v, w0)?;
            }
        }
    }
    Ok(g)
}

/// Scales every edge of `y` except the one to `exclude` by `1 + delta / s`,
/// where `s` is `y`'s strength over those edges; `s` therefore grows by
/// exactly `delta`. A node with no such edge is left untouched.
pub fn bbv_redistribute(
    g: &mut LabeledGraph,
    y: NodeId,
    delta: f64,
    exclude: Option<NodeId>,
) -> Result<()> {
    if !g.contains(y) {
        return Err(Error::UnknownNode(y));
    }
    let s: f64 = g.neighbors(y).filter(|&(z, _)| Some(z) != exclude).map(|(_, w)| w).sum();
    if s > 0.0 && delta != 0.0 {
        g.scale_incident(y, 1.0 + delta / s, exclude, |_, _, _| {});
    }
    Ok(())
}

/// Preferential sampler over a frozen graph.
pub struct PreferentialSampler {
    index: AttachmentIndex,
    community: Vec<u32>,
}

impl PreferentialSampler {
    pub fn new(g: &LabeledGraph, pref: Preference) -> Self {
        Self {
            index: AttachmentIndex::from_graph(g, pref),
            community: g.nodes().map(|x| g.community(x)).collect(),
        }
    }

    fn own(&self, x: NodeId) -> Result<u32> {
        self.community.get(x as usize).copied().ok_or(Error::UnknownNode(x))
    }

    /// A member of `x`'s community other than `x` and outside `exclude`,
    /// drawn proportional to intra-degree (or intra-strength). `Ok(None)`
    /// signals that no eligible node has positive weight.
    pub fn intra<R: Rng + ?Sized>(
        &self,
        x: NodeId,
        exclude: &[NodeId],
        rng: &mut R,
    ) -> Result<Option<NodeId>> {
        let c = self.own(x)?;
        let mut ex = exclude.to_vec();
        ex.push(x);
        Ok(self.index.sample_intra(c, &ex, rng))
    }

    /// A node outside `x`'s community and outside `exclude`, drawn
    /// proportional to inter-degree (or inter-strength).
    pub fn inter<R: Rng + ?Sized>(
        &self,
        x: NodeId,
        exclude: &[NodeId],
        rng: &mut R,
    ) -> Result<Option<NodeId>> {
        let c = self.own(x)?;
        Ok(self.index.sample_inter(c, exclude, rng))
    }
}

pub fn sample_intra<R: Rng + ?Sized>(
    x: NodeId,
    g: &LabeledGraph,
    pref: Preference,
    exclude: &[NodeId],
    rng: &mut R,
) -> Result<Option<NodeId>> {
    PreferentialSampler::new(g, pref).intra(x, exclude, rng)
}

pub fn sample_inter<R: Rng + ?Sized>(
    x: NodeId,
    g: &LabeledGraph,
    pref: Preference,
    exclude: &[NodeId],
    rng: &mut R,
) -> Result<Option<NodeId>> {
    PreferentialSampler::new(g, pref).inter(x, exclude, rng)
}

/// Promotes one periphery node of `g` to the core under `params` (see
/// [`Growth::promote_core`]). Returns the promoted node.
pub fn promote_core<R: Rng + ?Sized>(
    g: &mut LabeledGraph,
    params: &ModelParams,
    rng: &mut R,
) -> Option<NodeId> {
    let mut growth = Growth::attach(std::mem::take(g), params.clone());
    let promoted = growth.promote_core(rng);
    *g = growth.into_graph();
    promoted
}

/// Runs one triad-formation attempt from `x` (see [`Growth::triad_step`]).
/// Returns the node `x` was linked to or reinforced with, if any.
pub fn triad_step<R: Rng + ?Sized>(
    g: &mut LabeledGraph,
    x: NodeId,
    params: &ModelParams,
    rng: &mut R,
) -> Result<Option<NodeId>> {
    if !g.contains(x) {
        return Err(Error::UnknownNode(x));
    }
    let mut growth = Growth::attach(std::mem::take(g), params.clone());
    let closed = growth.triad_step(x, rng);
    *g = growth.into_graph();
    Ok(closed)
}

/// Generates a graph from `params`.
pub fn generate(params: &ModelParams) -> Result<LabeledGraph> {
    let mut gen = Generator::new(params.clone())?;
    gen.run(params.steps);
    Ok(gen.into_graph())
}

/// Mutable growth state: the graph plus the attachment index kept in sync
/// with it. Randomness is supplied by the caller.
#[derive(Debug, Clone)]
pub struct Growth {
    params: ModelParams,
    graph: LabeledGraph,
    index: AttachmentIndex,
    core: Vec<NodeId>,
    // upper bound on every degree, for rejection sampling
    max_degree: usize,
}

impl Growth {
    /// Wraps an existing graph; core membership is read from node types.
    pub fn attach(graph: LabeledGraph, params: ModelParams) -> Self {
        let index = AttachmentIndex::from_graph(&graph, params.preference());
        let core = graph.core_nodes();
        let max_degree = graph.nodes().map(|x| graph.degree(x)).max().unwrap_or(0);
        Self { params, graph, index, core, max_degree }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn into_graph(self) -> LabeledGraph {
        self.graph
    }

    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    fn weighted(&self) -> bool {
        self.params.model == Model::B
    }

    fn pref_weight(&self, x: NodeId) -> f64 {
        self.index.weight(x)
    }

    fn redistribute(&mut self, y: NodeId) {
        let delta = self.params.delta;
        // The index tracks strengths incrementally under strength preference,
        // which saves a pass over the neighborhood.
        let s = match self.params.preference() {
            Preference::Strength => self.index.weight(y),
            Preference::Degree => self.graph.strength(y),
        };
        if s <= 0.0 || delta == 0.0 {
            return;
        }
        let factor = 1.0 + delta / s;
        let index = &mut self.index;
        let mut pending = [0.0; 2];
        self.graph.scale_incident(y, factor, None, |z, old, new| {
            index.on_neighbor_change(y, z, new - old, &mut pending)
        });
        index.on_pending(y, pending);
    }

    /// New edge `(from, to)` of weight `w0` where `to` is the existing
    /// endpoint that absorbs the redistributed load in model B.
    fn link(&mut self, from: NodeId, to: NodeId, arrival: bool) {
        if self.weighted() && (arrival || self.params.bbv_scope == BbvScope::AllSteps) {
            self.redistribute(to);
        }
        let w0 = self.params.edge_weight();
        self.graph.add_edge(from, to, w0).expect("generator links distinct existing nodes");
        self.index.on_new_edge(from, to, w0);
        self.max_degree =
            self.max_degree.max(self.graph.degree(from)).max(self.graph.degree(to));
    }

    /// Adds one periphery node and its `m` preferential links. Returns the
    /// new node.
    pub fn arrive<R: Rng + ?Sized>(&mut self, rng: &mut R) -> NodeId {
        let c = rng.gen_range(0..self.params.c);
        let x = self.graph.add_node(c, NodeType::Periphery);
        self.index.push_node(x, c);

        let intra_want = self.params.intra_links() as usize;
        let inter_want = self.params.inter_links() as usize;
        let mut targets: Vec<NodeId> = Vec::with_capacity(self.params.m as usize);
        let mut exclude = vec![x];

        let draw = |idx: &AttachmentIndex,
                    intra: bool,
                    want: usize,
                    exclude: &mut Vec<NodeId>,
                    targets: &mut Vec<NodeId>,
                    rng: &mut R| {
            for got in 0..want {
                let y = if intra {
                    idx.sample_intra(c, exclude, rng)
                } else {
                    idx.sample_inter(c, exclude, rng)
                };
                match y {
                    Some(y) => {
                        targets.push(y);
                        exclude.push(y);
                    }
                    None => return want - got,
                }
            }
            0
        };

        let intra_short = draw(&self.index, true, intra_want, &mut exclude, &mut targets, rng);
        let inter_short =
            draw(&self.index, false, inter_want + intra_short, &mut exclude, &mut targets, rng);
        if inter_short > 0 && intra_short == 0 {
            draw(&self.index, true, inter_short, &mut exclude, &mut targets, rng);
        }

        for y in targets {
            self.link(x, y, true);
        }
        x
    }

    /// Promotes a periphery node chosen proportional to degree (model A) or
    /// strength (model B) and links it to each core node it is not yet
    /// adjacent to with probability `p`. If every coin flip fails, one
    /// unlinked core node, chosen by the same preferential rule, is linked
    /// anyway. Returns `None` when no periphery node has positive weight.
    pub fn promote_core<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Option<NodeId> {
        let candidates: Vec<(NodeId, f64)> = self
            .graph
            .nodes()
            .filter(|&x| !self.graph.is_core(x))
            .map(|x| (x, self.pref_weight(x)))
            .collect();
        let x = draw_weighted(candidates, rng)?;
        self.graph.set_node_type(x, NodeType::Core);

        let existing = std::mem::take(&mut self.core);
        let mut linked = false;
        for &c in &existing {
            if self.graph.has_edge(x, c) {
                continue;
            }
            if rng.gen::<f64>() < self.params.p {
                self.link(x, c, false);
                linked = true;
            }
        }
        if !linked {
            let unlinked: Vec<(NodeId, f64)> = existing
                .iter()
                .filter(|&&c| !self.graph.has_edge(x, c))
                .map(|&c| (c, self.pref_weight(c)))
                .collect();
            if let Some(c) = draw_weighted(unlinked, rng) {
                self.link(x, c, false);
            }
        }
        self.core = existing;
        self.core.push(x);
        Some(x)
    }

    /// Triad formation from `x`: pick a neighbor `y`, then a neighbor `z` of
    /// `y` other than `x`, and link `x` to `z`.
    ///
    /// Model A draws both hops proportional to degree and does nothing when
    /// `z` is already adjacent to `x`. Model B draws proportional to the
    /// connecting edge weight (or to strength, per
    /// [`ModelParams::triad_weighting`]); if `z` is already adjacent to `x`
    /// the edge is reinforced by `w0`, otherwise a new edge is created with
    /// redistribution at `z`. Returns `z`, or `None` if no `z` exists.
    pub fn triad_step<R: Rng + ?Sized>(&mut self, x: NodeId, rng: &mut R) -> Option<NodeId> {
        if self.weighted() {
            self.triad_weighted(x, rng)
        } else {
            self.triad_unweighted(x, rng)
        }
    }

    fn triad_unweighted<R: Rng + ?Sized>(&mut self, x: NodeId, rng: &mut R) -> Option<NodeId> {
        let y = self.degree_hop(x, None, rng)?;
        let z = self.degree_hop(y, Some(x), rng)?;
        if self.graph.has_edge(x, z) {
            return None;
        }
        self.link(x, z, false);
        Some(z)
    }

    /// Neighbor of `from` other than `skip`, drawn proportional to degree.
    ///
    /// Large neighborhoods are first tried by proposing uniform neighbors
    /// and accepting with probability `degree / max_degree`. After `k / 4`
    /// rejections the draw falls back to an exact scan, which leaves the
    /// distribution unchanged.
    fn degree_hop<R: Rng + ?Sized>(
        &self,
        from: NodeId,
        skip: Option<NodeId>,
        rng: &mut R,
    ) -> Option<NodeId> {
        const SCAN_BELOW: usize = 32;
        let g = &self.graph;
        let k = g.degree(from);
        if k >= SCAN_BELOW {
            let bound = self.max_degree as f64;
            for _ in 0..k / 4 {
                let z = g.neighbor_at(from, rng.gen_range(0..k));
                if Some(z) != skip && rng.gen::<f64>() * bound < g.degree(z) as f64 {
                    return Some(z);
                }
            }
        }
        let candidates = g
            .neighbors(from)
            .filter(move |&(z, _)| Some(z) != skip)
            .map(|(z, _)| (z, g.degree(z) as f64));
        draw_weighted(candidates, rng)
    }

    fn triad_weighted<R: Rng + ?Sized>(&mut self, x: NodeId, rng: &mut R) -> Option<NodeId> {
        let by_strength = self.params.triad_weighting == TriadWeighting::Strength;
        let g = &self.graph;
        let index = &self.index;
        let hop = |from: NodeId, skip: Option<NodeId>| {
            g.neighbors(from)
                .filter(move |&(z, _)| Some(z) != skip)
                .map(move |(z, w)| (z, if by_strength { index.weight(z) } else { w }))
        };
        let y = draw_weighted(hop(x, None), rng)?;
        let z = draw_weighted(hop(y, Some(x)), rng)?;
        if self.graph.has_edge(x, z) {
            let w0 = self.params.edge_weight();
            self.graph.add_edge(x, z, w0).expect("edge exists");
            self.index.on_weight_change(x, z, w0);
        } else {
            self.link(x, z, false);
        }
        Some(z)
    }

    /// Every node independently attempts a triad link with probability `r`,
    /// in ascending id order.
    pub fn triads<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        let r = self.params.r;
        if r <= 0.0 {
            return;
        }
        let n = self.graph.node_count() as u64;
        if r >= 1.0 {
            for x in 0..n {
                self.triad_step(x as NodeId, rng);
            }
            return;
        }
        // Gaps between selected nodes are geometric with success probability r.
        let log_miss = (-r).ln_1p();
        let mut next = 0u64;
        loop {
            let u: f64 = 1.0 - rng.gen::<f64>();
            let gap = (u.ln() / log_miss).floor();
            if gap >= (n - next) as f64 {
                break;
            }
            let x = next + gap as u64;
            self.triad_step(x as NodeId, rng);
            next = x + 1;
        }
    }

    /// One full time step: arrival, possible promotion, triad links.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        self.arrive(rng);
        if rng.gen::<f64>() < self.params.q {
            self.promote_core(rng);
        }
        self.triads(rng);
    }
}

/// A [`Growth`] bundled with its seeded random stream.
#[derive(Debug, Clone)]
pub struct Generator {
    growth: Growth,
    rng: ChaCha8Rng,
    steps_done: u64,
}

impl Generator {
    /// Validates `params` and builds the seed graph. `params.steps` is not
    /// consumed here; drive growth with [`Generator::run`].
    pub fn new(params: ModelParams) -> Result<Self> {
        params.validate()?;
        let mut rng = rng_for(params.seed, GENERATION_STREAM);
        let seed = build_seed(&params, &mut rng)?;
        Ok(Self { growth: Growth::attach(seed, params), rng, steps_done: 0 })
    }

    pub fn run(&mut self, steps: u64) {
        for _ in 0..steps {
            self.growth.step(&mut self.rng);
        }
        self.steps_done += steps;
    }

    pub fn steps_done(&self) -> u64 {
        self.steps_done
    }

    pub fn graph(&self) -> &LabeledGraph {
        self.growth.graph()
    }

    pub fn into_graph(self) -> LabeledGraph {
        self.growth.into_graph()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rng() -> ChaCha8Rng {
        rng_for(42, 9)
    }

    fn path(n: u32, model: Model) -> (LabeledGraph, ModelParams) {
        let mut g = LabeledGraph::new();
        for _ in 0..n {
            g.add_node(0, NodeType::Periphery);
        }
        for x in 1..n {
            g.add_edge(x - 1, x, 1.0).unwrap();
        }
        (g, ModelParams { model, ..ModelParams::default() })
    }

    #[test]
    fn seed_single_community_is_triangle() {
        let p = ModelParams { c: 1, n0: 3, ..ModelParams::default() };
        let g = build_seed(&p, &mut rng()).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 3));
        assert!(g.nodes().all(|x| g.is_core(x)));
    }

    #[test]
    fn seed_with_p_one_is_complete() {
        let p = ModelParams { c: 2, n0: 2, p: 1.0, ..ModelParams::default() };
        let g = build_seed(&p, &mut rng()).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(
            g.nodes().map(|x| g.community(x)).collect::<Vec<_>>(),
            vec![0, 0, 1, 1]
        );
    }

    #[test]
    fn seed_weights_follow_model() {
        let p = ModelParams { w0: 2.5, ..ModelParams::model_b() };
        let g = build_seed(&p, &mut rng()).unwrap();
        assert!(g.edges().all(|(_, _, w)| w == 2.5));
        let p = ModelParams { w0: 2.5, ..ModelParams::model_a() };
        let g = build_seed(&p, &mut rng()).unwrap();
        assert!(g.edges().all(|(_, _, w)| w == 1.0));
    }

    #[test]
    fn bbv_examples() {
        let mut g = LabeledGraph::new();
        for _ in 0..4 {
            g.add_node(0, NodeType::Periphery);
        }
        g.add_edge(0, 1, 1.0).unwrap();
        g.add_edge(0, 2, 3.0).unwrap();
        bbv_redistribute(&mut g, 0, 1.0, None).unwrap();
        assert_eq!(g.weight(0, 1), Some(1.25));
        assert_eq!(g.weight(0, 2), Some(3.75));
        assert_eq!(g.strength(0), 5.0);

        let before = g.clone();
        bbv_redistribute(&mut g, 0, 0.0, None).unwrap();
        assert_eq!(g, before);

        // Excluded edge is neither counted nor scaled.
        g.add_edge(0, 3, 1.0).unwrap();
        bbv_redistribute(&mut g, 3, 1.0, Some(0)).unwrap();
        assert_eq!(g.weight(0, 3), Some(1.0));

        let mut h = LabeledGraph::new();
        h.add_node(0, NodeType::Periphery);
        h.add_node(0, NodeType::Periphery);
        h.add_edge(0, 1, 2.0).unwrap();
        bbv_redistribute(&mut h, 0, 1.0, None).unwrap();
        assert_eq!(h.weight(0, 1), Some(3.0));
    }

    #[test]
    fn bbv_on_isolated_node_is_noop() {
        let mut g = LabeledGraph::new();
        g.add_node(0, NodeType::Periphery);
        bbv_redistribute(&mut g, 0, 1.0, None).unwrap();
        assert!(bbv_redistribute(&mut g, 5, 1.0, None).is_err());
    }

    #[test]
    fn triad_closes_path() {
        for model in [Model::A, Model::B] {
            let (mut g, p) = path(3, model);
            let z = triad_step(&mut g, 0, &p, &mut rng()).unwrap();
            assert_eq!(z, Some(2));
            assert_eq!(g.weight(0, 2), Some(1.0));
        }
    }

    #[test]
    fn triad_from_star_center_is_skipped() {
        let mut g = LabeledGraph::new();
        for _ in 0..5 {
            g.add_node(0, NodeType::Periphery);
        }
        for leaf in 1..5 {
            g.add_edge(0, leaf, 1.0).unwrap();
        }
        for model in [Model::A, Model::B] {
            let p = ModelParams { model, ..ModelParams::default() };
            let mut h = g.clone();
            assert_eq!(triad_step(&mut h, 0, &p, &mut rng()).unwrap(), None);
            assert_eq!(h, g);
        }
    }

    #[test]
    fn triad_in_weighted_clique_reinforces() {
        let mut g = LabeledGraph::new();
        for _ in 0..4 {
            g.add_node(0, NodeType::Periphery);
        }
        for u in 0..4 {
            for v in (u + 1)..4 {
                g.add_edge(u, v, 1.0).unwrap();
            }
        }
        let p = ModelParams::model_b();
        let total_before: f64 = g.edges().map(|e| e.2).sum();
        let z = triad_step(&mut g, 0, &p, &mut rng()).unwrap().unwrap();
        assert_eq!(g.weight(0, z), Some(2.0));
        assert_eq!(g.edge_count(), 6);
        let total_after: f64 = g.edges().map(|e| e.2).sum();
        assert_eq!(total_after, total_before + 1.0);

        // Model A never reinforces: every z is already adjacent.
        let p = ModelParams::model_a();
        let before = g.clone();
        assert_eq!(triad_step(&mut g, 0, &p, &mut rng()).unwrap(), None);
        assert_eq!(g, before);
    }

    #[test]
    fn promote_with_p_one_links_every_unlinked_core() {
        let mut g = LabeledGraph::new();
        for _ in 0..10 {
            g.add_node(0, NodeType::Core);
        }
        for u in 0..10 {
            for v in (u + 1)..10 {
                g.add_edge(u, v, 1.0).unwrap();
            }
        }
        let x = g.add_node(0, NodeType::Periphery);
        g.add_edge(x, 0, 1.0).unwrap();
        g.add_edge(x, 1, 1.0).unwrap();
        let p = ModelParams { p: 1.0, ..ModelParams::default() };
        let before = g.edge_count();
        assert_eq!(promote_core(&mut g, &p, &mut rng()), Some(x));
        assert!(g.is_core(x));
        assert_eq!(g.edge_count() - before, 8);
    }

    #[test]
    fn promote_without_periphery_is_noop() {
        let p = ModelParams { c: 1, ..ModelParams::default() };
        let mut g = build_seed(&p, &mut rng()).unwrap();
        let before = g.clone();
        assert_eq!(promote_core(&mut g, &p, &mut rng()), None);
        assert_eq!(g, before);
    }

    #[test]
    fn promote_guarantees_a_core_link() {
        let p = ModelParams { p: 1e-12, ..ModelParams::default() };
        for seed in 0..20 {
            let mut g = build_seed(&ModelParams { p: 0.5, ..p.clone() }, &mut rng_for(seed, 3)).unwrap();
            let x = g.add_node(0, NodeType::Periphery);
            g.add_edge(x, 0, 1.0).unwrap();
            let before = g.degree(x);
            assert_eq!(promote_core(&mut g, &p, &mut rng_for(seed, 4)), Some(x));
            assert_eq!(g.degree(x), before + 1);
        }
    }

    #[test]
    fn zero_steps_returns_seed() {
        let p = ModelParams { steps: 0, seed: 11, ..ModelParams::default() };
        let g = generate(&p).unwrap();
        let seed = build_seed(&p, &mut rng_for(11, GENERATION_STREAM)).unwrap();
        assert_eq!(g, seed);
    }

    #[test]
    fn arrivals_make_three_intra_one_inter() {
        let p = ModelParams { q: 0.0, r: 0.0, steps: 0, seed: 5, ..ModelParams::default() };
        let mut gen = Generator::new(p).unwrap();
        for _ in 0..200 {
            gen.run(1);
            let g = gen.graph();
            let x = (g.node_count() - 1) as NodeId;
            let s = g.stats(x).unwrap();
            assert_eq!((s.intra_degree, s.inter_degree), (3, 1));
        }
    }

    #[test]
    fn exhausted_intra_spills_into_inter() {
        // One-node "communities" cannot offer intra targets beyond the seed clique.
        let p = ModelParams { c: 3, n0: 2, m: 4, f: 0.75, p: 1.0, q: 0.0, r: 0.0, steps: 0, ..ModelParams::default() };
        let mut gen = Generator::new(p).unwrap();
        gen.run(1);
        let g = gen.graph();
        let x = (g.node_count() - 1) as NodeId;
        // Community holds two seed nodes: 2 intra, the remaining 2 spill to inter.
        let s = g.stats(x).unwrap();
        assert_eq!((s.intra_degree, s.inter_degree), (2, 2));
    }

    #[test]
    fn whole_graph_exhaustion_links_fewer() {
        let p = ModelParams { c: 1, n0: 2, m: 4, f: 0.5, q: 0.0, r: 0.0, steps: 0, ..ModelParams::default() };
        let mut gen = Generator::new(p).unwrap();
        gen.run(1);
        assert_eq!(gen.graph().degree(2), 2);
    }
}
