//! Incrementally maintained sampling structure for intra- and
//! inter-community preferential attachment.
//!
//! Every community owns two weight tables indexed by the community-local
//! position of its members: one holding intra-community weight (intra-degree
//! or intra-strength) and one holding inter-community weight. Updates are
//! constant time; sampling walks block sums.

use rand::Rng;

use crate::graph::{LabeledGraph, NodeId};

use super::params::Preference;

/// Nonnegative weights with block and super-block partial sums.
///
/// Point updates touch three sums. Sampling scans at most
/// `len / SUPER + BLOCKS_PER_SUPER + BLOCK` entries, which stays small for the
/// community sizes the generator produces, while BBV redistribution issues
/// many more updates than there are draws.
#[derive(Debug, Clone, Default)]
pub(crate) struct WeightTree {
    values: Vec<f64>,
    blocks: Vec<f64>,
    supers: Vec<f64>,
    positive: usize,
}

const BLOCK: usize = 64;
const BLOCKS_PER_SUPER: usize = 64;
const SUPER: usize = BLOCK * BLOCKS_PER_SUPER;

impl WeightTree {
    pub(crate) fn new() -> Self {
        Self::default()
    }

    pub(crate) fn len(&self) -> usize {
        self.values.len()
    }

    pub(crate) fn value(&self, i: usize) -> f64 {
        self.values[i]
    }

    pub(crate) fn positive(&self) -> usize {
        self.positive
    }

    pub(crate) fn push(&mut self, v: f64) {
        debug_assert!(v >= 0.0);
        let i = self.values.len();
        self.values.push(v);
        if i.is_multiple_of(BLOCK) {
            self.blocks.push(0.0);
        }
        if i.is_multiple_of(SUPER) {
            self.supers.push(0.0);
        }
        self.blocks[i / BLOCK] += v;
        self.supers[i / SUPER] += v;
        if v > 0.0 {
            self.positive += 1;
        }
    }

    #[inline]
    pub(crate) fn add(&mut self, i: usize, delta: f64) {
        if delta == 0.0 {
            return;
        }
        let old = self.values[i];
        let new = old + delta;
        debug_assert!(new >= -1e-9 * old.abs().max(1.0), "weight went negative: {old} + {delta}");
        let new = new.max(0.0);
        self.values[i] = new;
        match (old > 0.0, new > 0.0) {
            (false, true) => self.positive += 1,
            (true, false) => self.positive -= 1,
            _ => {}
        }
        let delta = new - old;
        self.blocks[i / BLOCK] += delta;
        self.supers[i / SUPER] += delta;
    }

    /// [`Self::add`] for a positive `delta` on an entry that is already
    /// positive, so the positive count cannot change.
    #[inline]
    pub(crate) fn grow(&mut self, i: usize, delta: f64) {
        debug_assert!(delta >= 0.0 && self.values[i] > 0.0);
        self.values[i] += delta;
        self.blocks[i / BLOCK] += delta;
        self.supers[i / SUPER] += delta;
    }

    pub(crate) fn total(&self) -> f64 {
        self.supers.iter().sum::<f64>().max(0.0)
    }

    /// Index `i` with `prefix(i) <= u < prefix(i + 1)`, skipping zero weights.
    ///
    /// Partial sums carry accumulated rounding, so a walk that runs off the
    /// end or lands on a zero entry falls back to an exact linear scan.
    pub(crate) fn find(&self, u: f64) -> usize {
        let mut rem = u;
        let Some(s) = pick(&self.supers, &mut rem) else {
            return self.find_linear(u);
        };
        let lo = s * BLOCKS_PER_SUPER;
        let hi = (lo + BLOCKS_PER_SUPER).min(self.blocks.len());
        let Some(b) = pick(&self.blocks[lo..hi], &mut rem) else {
            return self.find_linear(u);
        };
        let lo = (lo + b) * BLOCK;
        let hi = (lo + BLOCK).min(self.values.len());
        match pick(&self.values[lo..hi], &mut rem) {
            Some(i) if self.values[lo + i] > 0.0 => lo + i,
            _ => self.find_linear(u),
        }
    }

    fn find_linear(&self, u: f64) -> usize {
        let mut acc = 0.0;
        let mut last = None;
        for (i, &v) in self.values.iter().enumerate() {
            if v <= 0.0 {
                continue;
            }
            acc += v;
            last = Some(i);
            if u < acc {
                return i;
            }
        }
        last.expect("find called on a tree without positive weight")
    }
}

/// First index whose running sum exceeds `rem`, leaving the remainder.
#[inline]
fn pick(sums: &[f64], rem: &mut f64) -> Option<usize> {
    for (i, &s) in sums.iter().enumerate() {
        if *rem < s {
            return Some(i);
        }
        *rem -= s;
    }
    None
}

/// Per-community preferential attachment index kept in sync with a graph.
#[derive(Debug, Clone)]
pub(crate) struct AttachmentIndex {
    pref: Preference,
    // (community, position within the community) per node
    loc: Vec<(u32, u32)>,
    members: Vec<Vec<NodeId>>,
    intra: Vec<WeightTree>,
    inter: Vec<WeightTree>,
}

const REJECTION_ATTEMPTS: usize = 64;

impl AttachmentIndex {
    pub(crate) fn new(communities: usize, pref: Preference) -> Self {
        Self {
            pref,
            loc: Vec::new(),
            members: vec![Vec::new(); communities],
            intra: vec![WeightTree::new(); communities],
            inter: vec![WeightTree::new(); communities],
        }
    }

    pub(crate) fn from_graph(g: &LabeledGraph, pref: Preference) -> Self {
        let communities = g.nodes().map(|x| g.community(x) as usize + 1).max().unwrap_or(0);
        let mut idx = Self::new(communities, pref);
        for x in g.nodes() {
            let own = g.community(x);
            let (mut intra, mut inter) = (0.0, 0.0);
            for (y, w) in g.neighbors(x) {
                let amount = match pref {
                    Preference::Degree => 1.0,
                    Preference::Strength => w,
                };
                if g.community(y) == own {
                    intra += amount;
                } else {
                    inter += amount;
                }
            }
            idx.push_node_with(x, own, intra, inter);
        }
        idx
    }

    pub(crate) fn push_node(&mut self, x: NodeId, community: u32) {
        self.push_node_with(x, community, 0.0, 0.0);
    }

    fn push_node_with(&mut self, x: NodeId, community: u32, intra: f64, inter: f64) {
        debug_assert_eq!(x as usize, self.loc.len());
        let c = community as usize;
        self.loc.push((community, self.members[c].len() as u32));
        self.members[c].push(x);
        self.intra[c].push(intra);
        self.inter[c].push(inter);
    }

    #[inline]
    fn loc(&self, x: NodeId) -> (usize, usize) {
        let (c, s) = self.loc[x as usize];
        (c as usize, s as usize)
    }

    pub(crate) fn intra_weight(&self, x: NodeId) -> f64 {
        let (c, s) = self.loc(x);
        self.intra[c].value(s)
    }

    pub(crate) fn inter_weight(&self, x: NodeId) -> f64 {
        let (c, s) = self.loc(x);
        self.inter[c].value(s)
    }

    /// Degree or strength of `x`, according to the index's preference.
    pub(crate) fn weight(&self, x: NodeId) -> f64 {
        self.intra_weight(x) + self.inter_weight(x)
    }

    fn bump(&mut self, x: NodeId, same_community: bool, delta: f64) {
        let (c, s) = self.loc(x);
        let trees = if same_community { &mut self.intra } else { &mut self.inter };
        trees[c].add(s, delta);
    }

    fn same(&self, u: NodeId, v: NodeId) -> bool {
        self.loc[u as usize].0 == self.loc[v as usize].0
    }

    pub(crate) fn on_new_edge(&mut self, u: NodeId, v: NodeId, w: f64) {
        let amount = match self.pref {
            Preference::Degree => 1.0,
            Preference::Strength => w,
        };
        let same = self.same(u, v);
        self.bump(u, same, amount);
        self.bump(v, same, amount);
    }

    /// Records a weight change of `delta` on the existing edge `(u, v)`.
    pub(crate) fn on_weight_change(&mut self, u: NodeId, v: NodeId, delta: f64) {
        if self.pref == Preference::Strength {
            let same = self.same(u, v);
            self.bump(u, same, delta);
            self.bump(v, same, delta);
        }
    }

    /// Records a weight change of `delta` on the edge `(y, z)` at `z` only.
    /// The matching change at `y` is added to `pending` (intra, inter) and
    /// applied later by [`Self::on_pending`], once per redistribution.
    #[inline]
    pub(crate) fn on_neighbor_change(&mut self, y: NodeId, z: NodeId, delta: f64, pending: &mut [f64; 2]) {
        if self.pref != Preference::Strength {
            return;
        }
        let same = self.same(y, z);
        let (c, s) = self.loc(z);
        let trees = if same { &mut self.intra } else { &mut self.inter };
        // z is linked to y, so its weight on this side is already positive
        trees[c].grow(s, delta);
        pending[usize::from(!same)] += delta;
    }

    pub(crate) fn on_pending(&mut self, y: NodeId, pending: [f64; 2]) {
        if self.pref == Preference::Strength {
            self.bump(y, true, pending[0]);
            self.bump(y, false, pending[1]);
        }
    }

    fn excluded_positive(tree: &WeightTree, members_slot: impl Iterator<Item = usize>) -> usize {
        members_slot.filter(|&s| tree.value(s) > 0.0).count()
    }

    /// Node of `community` drawn proportional to intra weight, never one in
    /// `exclude`. `None` when no eligible node has positive weight.
    pub(crate) fn sample_intra<R: Rng + ?Sized>(
        &self,
        community: u32,
        exclude: &[NodeId],
        rng: &mut R,
    ) -> Option<NodeId> {
        let c = community as usize;
        let tree = self.intra.get(c)?;
        let mut excluded: Vec<usize> = exclude
            .iter()
            .filter_map(|&x| self.loc.get(x as usize))
            .filter(|&&(cx, _)| cx == community)
            .map(|&(_, s)| s as usize)
            .collect();
        excluded.sort_unstable();
        excluded.dedup();
        if tree.positive() <= Self::excluded_positive(tree, excluded.iter().copied()) {
            return None;
        }
        let total = tree.total();
        for _ in 0..REJECTION_ATTEMPTS {
            let s = tree.find(rng.gen::<f64>() * total);
            if excluded.binary_search(&s).is_err() {
                return Some(self.members[c][s]);
            }
        }
        // Excluded nodes hold most of the mass; draw exactly over survivors.
        let survivors: Vec<(NodeId, f64)> = (0..tree.len())
            .filter(|s| excluded.binary_search(s).is_err())
            .map(|s| (self.members[c][s], tree.value(s)))
            .collect();
        draw_weighted(survivors, rng)
    }

    /// Node outside `community` drawn proportional to inter weight, never one
    /// in `exclude`. `None` when no eligible node has positive weight.
    pub(crate) fn sample_inter<R: Rng + ?Sized>(
        &self,
        community: u32,
        exclude: &[NodeId],
        rng: &mut R,
    ) -> Option<NodeId> {
        let outside = |x: NodeId| {
            self.loc.get(x as usize).is_some_and(|&(cx, _)| cx != community)
        };
        let mut excluded: Vec<NodeId> = exclude.iter().copied().filter(|&x| outside(x)).collect();
        excluded.sort_unstable();
        excluded.dedup();
        let eligible: usize = (0..self.inter.len())
            .filter(|&j| j != community as usize)
            .map(|j| self.inter[j].positive())
            .sum::<usize>()
            - excluded.iter().filter(|&&x| self.inter_weight(x) > 0.0).count();
        if eligible == 0 {
            return None;
        }
        let totals: Vec<f64> = (0..self.inter.len())
            .map(|j| if j == community as usize { 0.0 } else { self.inter[j].total() })
            .collect();
        let grand: f64 = totals.iter().sum();
        for _ in 0..REJECTION_ATTEMPTS {
            let mut u = rng.gen::<f64>() * grand;
            let mut pick = None;
            for (j, &t) in totals.iter().enumerate() {
                if t <= 0.0 || self.inter[j].positive() == 0 {
                    u -= t;
                    continue;
                }
                pick = Some(j);
                if u < t {
                    break;
                }
                u -= t;
            }
            let j = pick?;
            let t = totals[j];
            let s = self.inter[j].find(u.clamp(0.0, t));
            let y = self.members[j][s];
            if excluded.binary_search(&y).is_err() {
                return Some(y);
            }
        }
        let survivors: Vec<(NodeId, f64)> = (0..self.inter.len())
            .filter(|&j| j != community as usize)
            .flat_map(|j| {
                (0..self.inter[j].len()).map(move |s| (self.members[j][s], self.inter[j].value(s)))
            })
            .filter(|(y, _)| excluded.binary_search(y).is_err())
            .collect();
        draw_weighted(survivors, rng)
    }
}

/// Exact proportional draw over an explicit candidate list; zero weights are
/// never selected.
pub(crate) fn draw_weighted<I, R>(candidates: I, rng: &mut R) -> Option<NodeId>
where
    I: IntoIterator<Item = (NodeId, f64)>,
    I::IntoIter: Clone,
    R: Rng + ?Sized,
{
    let candidates = candidates.into_iter();
    let total: f64 = candidates.clone().map(|(_, w)| w).sum();
    if !(total > 0.0) {
        return None;
    }
    let u = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut last = None;
    for (x, w) in candidates {
        if w <= 0.0 {
            continue;
        }
        acc += w;
        last = Some(x);
        if u < acc {
            return Some(x);
        }
    }
    last
}
