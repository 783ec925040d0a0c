//! K-shell (degree) and S-shell (strength) decomposition.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, NodeId};

/// Absolute slack when comparing remaining strengths against a threshold.
pub const STRENGTH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShellKind {
    Degree,
    Strength,
}

/// Shell assignment for every node of a graph.
///
/// For K-shell the index is the node's core number. For S-shell it is the
/// 1-based rank of the pruning phase that removed the node, and
/// [`ShellMap::threshold`] gives that phase's strength threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct ShellMap {
    kind: ShellKind,
    shell: Vec<u32>,
    thresholds: Vec<f64>,
}

impl ShellMap {
    pub fn kind(&self) -> ShellKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.shell.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shell.is_empty()
    }

    pub fn shell(&self, x: NodeId) -> u32 {
        self.shell[x as usize]
    }

    pub fn shells(&self) -> &[u32] {
        &self.shell
    }

    pub fn k_max(&self) -> u32 {
        self.shell.iter().copied().max().unwrap_or(0)
    }

    /// Strength threshold of an S-shell rank; `None` for K-shell maps.
    pub fn threshold(&self, rank: u32) -> Option<f64> {
        match self.kind {
            ShellKind::Degree => None,
            ShellKind::Strength => self.thresholds.get(rank.checked_sub(1)? as usize).copied(),
        }
    }

    /// Occupied shells from the nucleus outwards, each with its members in
    /// ascending id order.
    pub fn shells_descending(&self) -> Vec<(u32, Vec<NodeId>)> {
        let mut by_shell: std::collections::BTreeMap<u32, Vec<NodeId>> = Default::default();
        for (x, &s) in self.shell.iter().enumerate() {
            by_shell.entry(s).or_default().push(x as NodeId);
        }
        by_shell.into_iter().rev().collect()
    }

    /// `node,shell_rank,threshold` with the threshold blank for K-shell.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("node,shell_rank,threshold\n");
        for (x, &s) in self.shell.iter().enumerate() {
            match self.threshold(s) {
                Some(t) => writeln!(out, "{x},{s},{t}"),
                None => writeln!(out, "{x},{s},"),
            }
            .expect("writing to a String cannot fail");
        }
        out
    }
}

/// Core numbers by bucket-queue peeling (Batagelj-Zaversnik), linear in the
/// number of edges. Equivalent to pruning at thresholds 1, 2, ... where each
/// phase removes every node whose remaining degree is at most the
/// threshold, including nodes that drop to it during the phase.
pub fn k_shell(g: &LabeledGraph) -> Result<ShellMap> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let n = g.node_count();
    let mut deg: Vec<usize> = g.nodes().map(|x| g.degree(x)).collect();
    let max_deg = deg.iter().copied().max().unwrap_or(0);

    // bin[d] = start of degree-d block in `order`
    let mut bin = vec![0usize; max_deg + 2];
    for &d in &deg {
        bin[d + 1] += 1;
    }
    for d in 1..bin.len() {
        bin[d] += bin[d - 1];
    }
    let mut order = vec![0 as NodeId; n];
    let mut pos = vec![0usize; n];
    let mut next = bin.clone();
    for x in 0..n {
        let d = deg[x];
        pos[x] = next[d];
        order[pos[x]] = x as NodeId;
        next[d] += 1;
    }

    for i in 0..n {
        let v = order[i];
        let dv = deg[v as usize];
        for (u, _) in g.neighbors(v) {
            let u = u as usize;
            if deg[u] > dv {
                // swap u with the first node of its block, then shrink the block
                let du = deg[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = order[pw] as usize;
                if u != w {
                    order.swap(pu, pw);
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                deg[u] -= 1;
            }
        }
    }
    Ok(ShellMap {
        kind: ShellKind::Degree,
        shell: deg.into_iter().map(|d| d as u32).collect(),
        thresholds: Vec::new(),
    })
}

#[derive(Debug, PartialEq)]
struct Pending {
    strength: f64,
    node: NodeId,
}

impl Eq for Pending {}

impl Ord for Pending {
    fn cmp(&self, other: &Self) -> Ordering {
        // min-heap on strength, ties by node id
        other
            .strength
            .total_cmp(&self.strength)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for Pending {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Strength-based pruning. Each phase takes the smallest remaining strength
/// as its threshold and removes every node whose remaining strength is at
/// most the threshold (plus [`STRENGTH_TOLERANCE`]), recomputing strengths
/// after each removal; all nodes removed in one phase share a rank.
pub fn s_shell(g: &LabeledGraph) -> Result<ShellMap> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let n = g.node_count();
    let mut strength: Vec<f64> = g.nodes().map(|x| g.strength(x)).collect();
    let mut removed = vec![false; n];
    let mut shell = vec![0u32; n];
    let mut thresholds = Vec::new();
    let mut heap: BinaryHeap<Pending> = strength
        .iter()
        .enumerate()
        .map(|(x, &s)| Pending { strength: s, node: x as NodeId })
        .collect();

    let mut remaining = n;
    while remaining > 0 {
        // discard stale entries to find the current minimum
        let threshold = loop {
            let top = heap.peek().expect("remaining nodes have heap entries");
            let x = top.node as usize;
            if removed[x] || top.strength != strength[x] {
                heap.pop();
                continue;
            }
            break top.strength;
        };
        thresholds.push(threshold);
        let rank = thresholds.len() as u32;
        let limit = threshold + STRENGTH_TOLERANCE;
        while let Some(top) = heap.peek() {
            let x = top.node as usize;
            if removed[x] || top.strength != strength[x] {
                heap.pop();
                continue;
            }
            if top.strength > limit {
                break;
            }
            heap.pop();
            removed[x] = true;
            shell[x] = rank;
            remaining -= 1;
            for (y, w) in g.neighbors(x as NodeId) {
                let y = y as usize;
                if !removed[y] {
                    strength[y] -= w;
                    heap.push(Pending { strength: strength[y], node: y as NodeId });
                }
            }
        }
    }
    Ok(ShellMap { kind: ShellKind::Strength, shell, thresholds })
}
