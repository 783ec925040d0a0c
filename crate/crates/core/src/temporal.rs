//! Core evolution between two cumulative snapshots of a timestamped network.
//!
//! Nodes that enter the detected core between the snapshots ("shifted") are
//! compared with nodes of the same first-snapshot degree that stay in the
//! periphery. For both groups the analysis reports how many links to the
//! first snapshot's core each node gained, and how much its degree grew.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::io::{BufRead, BufReader};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corecheck::detect_core;
use crate::decomposition::{k_shell, s_shell, ShellMap};
use crate::error::{Error, Result};
use crate::generator::{Generator, Model, ModelParams};
use crate::graph::{LabeledGraph, NodeId, NodeType};

/// Share of nodes taken as the detected core of each snapshot.
pub const DEFAULT_CORE_FRACTION: f64 = 0.01;

/// One line of a timestamped edge list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimedEdge {
    pub u: u64,
    pub v: u64,
    pub w: f64,
    pub t: i64,
}

/// Parses `u v [w] t` lines. Blank lines and `#` comments are skipped.
pub fn parse_timed_edges<R: BufRead>(input: R, source: &Path) -> Result<Vec<TimedEdge>> {
    let mut edges = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { path: source.to_path_buf(), line: idx + 1, msg };
        let fields: Vec<&str> = body.split_whitespace().collect();
        let (u, v, w, t) = match fields[..] {
            [u, v, t] => (u, v, None, t),
            [u, v, w, t] => (u, v, Some(w), t),
            _ => return Err(err(format!("expected `u v [w] t`, found {} fields", fields.len()))),
        };
        let id = |s: &str| s.parse::<u64>().map_err(|e| err(format!("bad node id `{s}`: {e}")));
        let (u, v) = (id(u)?, id(v)?);
        let w = match w {
            Some(s) => s.parse::<f64>().map_err(|e| err(format!("bad weight `{s}`: {e}")))?,
            None => 1.0,
        };
        let t = t.parse::<i64>().map_err(|e| err(format!("bad timestamp `{t}`: {e}")))?;
        if u == v {
            return Err(err(format!("self-loop on node {u}")));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(err(format!("weight must be positive, got {w}")));
        }
        edges.push(TimedEdge { u, v, w, t });
    }
    Ok(edges)
}

/// Two cumulative snapshots with their shell decompositions and detected
/// cores. Node ids are shared: every node of `g1` keeps its id in `g2`.
#[derive(Debug, Clone)]
pub struct SnapshotPair {
    pub g1: LabeledGraph,
    pub g2: LabeledGraph,
    pub shells1: ShellMap,
    pub shells2: ShellMap,
    pub core1: BTreeSet<NodeId>,
    pub core2: BTreeSet<NodeId>,
    /// Whether strength (S-shell) rather than degree (K-shell) shells were used.
    pub weighted: bool,
    /// Original id of every dense node id; empty when the ids were already dense.
    pub external_ids: Vec<u64>,
}

impl SnapshotPair {
    /// Decomposes both snapshots and detects each core at `fraction` of its
    /// node count. `g1` must be a node-prefix of `g2`.
    pub fn from_graphs(g1: LabeledGraph, g2: LabeledGraph, weighted: bool, fraction: f64) -> Result<Self> {
        if g1.node_count() > g2.node_count() {
            return Err(Error::InvalidParams(
                "first snapshot has more nodes than the second".into(),
            ));
        }
        let decompose = if weighted { s_shell } else { k_shell };
        let shells1 = decompose(&g1)?;
        let shells2 = decompose(&g2)?;
        let core1 = detect_core(&shells1, g1.node_count(), fraction)?;
        let core2 = detect_core(&shells2, g2.node_count(), fraction)?;
        Ok(Self { g1, g2, shells1, shells2, core1, core2, weighted, external_ids: Vec::new() })
    }

    /// Builds cumulative snapshots at cutoffs `t1 < t2` (inclusive).
    ///
    /// External ids are renumbered in order of first appearance, sorting
    /// edges by timestamp and then by position in the input, so the nodes of
    /// the first snapshot receive the lowest ids. Repeated pairs are merged:
    /// weights add up when `weighted`, otherwise the edge is kept once with
    /// weight 1.
    pub fn from_edges(edges: &[TimedEdge], t1: i64, t2: i64, weighted: bool, fraction: f64) -> Result<Self> {
        if t1 >= t2 {
            return Err(Error::InvalidParams(format!("t1 must be before t2, got {t1} >= {t2}")));
        }
        let mut order: Vec<&TimedEdge> = edges.iter().filter(|e| e.t <= t2).collect();
        order.sort_by_key(|e| e.t);

        let mut dense: HashMap<u64, NodeId> = HashMap::new();
        let mut external_ids = Vec::new();
        let mut id = |x: u64| -> NodeId {
            *dense.entry(x).or_insert_with(|| {
                external_ids.push(x);
                (external_ids.len() - 1) as NodeId
            })
        };
        let remapped: Vec<(NodeId, NodeId, f64, i64)> =
            order.iter().map(|e| (id(e.u), id(e.v), e.w, e.t)).collect();

        let build = |cutoff: i64| -> Result<LabeledGraph> {
            let included = remapped.iter().filter(|e| e.3 <= cutoff);
            let n = included.clone().map(|e| e.0.max(e.1) as usize + 1).max().unwrap_or(0);
            let mut g = LabeledGraph::with_capacity(n);
            for _ in 0..n {
                g.add_node(0, NodeType::Periphery);
            }
            for &(u, v, w, _) in included {
                if weighted {
                    g.add_edge(u, v, w)?;
                } else if !g.has_edge(u, v) {
                    g.add_edge(u, v, 1.0)?;
                }
            }
            Ok(g)
        };
        let g1 = build(t1)?;
        let g2 = build(t2)?;
        let mut pair = Self::from_graphs(g1, g2, weighted, fraction)?;
        pair.external_ids = external_ids;
        Ok(pair)
    }

    /// Runs the generator for `t` steps, snapshots, then runs `dt` more.
    /// Model B pairs use S-shell cores.
    pub fn synthetic(params: &ModelParams, t: u64, dt: u64, fraction: f64) -> Result<Self> {
        let mut gen = Generator::new(params.clone())?;
        gen.run(t);
        let g1 = gen.graph().clone();
        gen.run(dt);
        Self::from_graphs(g1, gen.into_graph(), params.model == Model::B, fraction)
    }

    /// Original id of dense node `x`.
    pub fn external_id(&self, x: NodeId) -> u64 {
        self.external_ids.get(x as usize).copied().unwrap_or(x as u64)
    }
}

/// Reads a `u v [w] t` file and builds the snapshot pair at `t1 < t2`.
pub fn load_snapshots(path: &Path, t1: i64, t2: i64, weighted: bool) -> Result<SnapshotPair> {
    if t1 >= t2 {
        return Err(Error::InvalidParams(format!("t1 must be before t2, got {t1} >= {t2}")));
    }
    let file = fs::File::open(path)?;
    let edges = parse_timed_edges(BufReader::new(file), path)?;
    SnapshotPair::from_edges(&edges, t1, t2, weighted, DEFAULT_CORE_FRACTION)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Shifted,
    Control,
}

/// Growth of one node between the snapshots.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodeShift {
    pub node: NodeId,
    pub group: Group,
    pub degree1: usize,
    /// Change in the number of links to first-snapshot core nodes.
    pub delta_core: i64,
    pub delta_total: i64,
}

/// Per-degree comparison of shifted nodes with their controls. Control
/// fields are `None` when no node of that degree stayed in the periphery.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftRow {
    pub degree: usize,
    pub shifted: usize,
    pub controls: usize,
    pub shifted_delta_core: f64,
    pub control_delta_core: Option<f64>,
    pub shifted_delta_total: f64,
    pub control_delta_total: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftStats {
    pub rows: Vec<ShiftRow>,
    /// Shifted nodes whose degree has no control.
    pub unmatched: usize,
    pub nodes: Vec<NodeShift>,
}

/// Group means over matched buckets, with controls weighted by the number of
/// shifted nodes in each bucket so both sides share a degree mix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftSummary {
    pub matched: usize,
    pub shifted_delta_core: f64,
    pub control_delta_core: f64,
    pub shifted_delta_total: f64,
    pub control_delta_total: f64,
}

impl ShiftSummary {
    /// Shifted over control mean Δcore; infinite when controls gained none.
    pub fn core_ratio(&self) -> f64 {
        self.shifted_delta_core / self.control_delta_core
    }

    pub fn total_ratio(&self) -> f64 {
        self.shifted_delta_total / self.control_delta_total
    }
}

impl ShiftStats {
    pub fn shifted_count(&self) -> usize {
        self.rows.iter().map(|r| r.shifted).sum()
    }

    pub fn summary(&self) -> Option<ShiftSummary> {
        let matched: Vec<&ShiftRow> = self.rows.iter().filter(|r| r.controls > 0).collect();
        let n: usize = matched.iter().map(|r| r.shifted).sum();
        if n == 0 {
            return None;
        }
        let mean = |f: &dyn Fn(&ShiftRow) -> f64| {
            matched.iter().map(|r| r.shifted as f64 * f(r)).sum::<f64>() / n as f64
        };
        Some(ShiftSummary {
            matched: n,
            shifted_delta_core: mean(&|r| r.shifted_delta_core),
            control_delta_core: mean(&|r| r.control_delta_core.unwrap_or(f64::NAN)),
            shifted_delta_total: mean(&|r| r.shifted_delta_total),
            control_delta_total: mean(&|r| r.control_delta_total.unwrap_or(f64::NAN)),
        })
    }

    /// One row per first-snapshot degree; missing control means are blank.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "degree,shifted_count,control_count,shifted_delta_core,control_delta_core,\
             shifted_delta_total,control_delta_total\n",
        );
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.degree,
                r.shifted,
                r.controls,
                r.shifted_delta_core,
                opt(r.control_delta_core),
                r.shifted_delta_total,
                opt(r.control_delta_total)
            )
            .expect("writing to a String cannot fail");
        }
        out
    }

    /// Per-node values for scatter plots: `node,group,degree,delta_core,delta_total`.
    pub fn nodes_csv(&self) -> String {
        let mut out = String::from("node,group,degree,delta_core,delta_total\n");
        for s in &self.nodes {
            let group = match s.group {
                Group::Shifted => "shifted",
                Group::Control => "control",
            };
            writeln!(out, "{},{group},{},{},{}", s.node, s.degree1, s.delta_core, s.delta_total)
                .expect("writing to a String cannot fail");
        }
        out
    }
}

fn core_links(g: &LabeledGraph, x: NodeId, core: &BTreeSet<NodeId>) -> usize {
    g.neighbors(x).filter(|(y, _)| core.contains(y)).count()
}

/// Compares nodes that joined the core with same-degree nodes that did not.
///
/// Shifted nodes are those in `core2` but not `core1` that already exist in
/// `g1`. Controls exist in `g1`, belong to neither core and share a shifted
/// node's `g1` degree. Core links are counted against `core1` in both
/// snapshots, by edge count.
pub fn shift_analysis(pair: &SnapshotPair) -> ShiftStats {
    let n1 = pair.g1.node_count() as NodeId;
    let shifted: BTreeSet<NodeId> =
        pair.core2.iter().copied().filter(|x| *x < n1 && !pair.core1.contains(x)).collect();
    let degrees: BTreeSet<usize> = shifted.iter().map(|&x| pair.g1.degree(x)).collect();
    let controls: Vec<NodeId> = (0..n1)
        .filter(|x| !pair.core1.contains(x) && !pair.core2.contains(x))
        .filter(|&x| degrees.contains(&pair.g1.degree(x)))
        .collect();

    let measure = |x: NodeId, group: Group| NodeShift {
        node: x,
        group,
        degree1: pair.g1.degree(x),
        delta_core: core_links(&pair.g2, x, &pair.core1) as i64
            - core_links(&pair.g1, x, &pair.core1) as i64,
        delta_total: pair.g2.degree(x) as i64 - pair.g1.degree(x) as i64,
    };
    let shifted_vec: Vec<NodeId> = shifted.into_iter().collect();
    let mut nodes: Vec<NodeShift> =
        shifted_vec.par_iter().map(|&x| measure(x, Group::Shifted)).collect();
    nodes.extend(controls.par_iter().map(|&x| measure(x, Group::Control)).collect::<Vec<_>>());

    #[derive(Default)]
    struct Acc {
        n: usize,
        core: i64,
        total: i64,
    }
    let mut buckets: BTreeMap<usize, (Acc, Acc)> = BTreeMap::new();
    for s in &nodes {
        let (sh, ct) = buckets.entry(s.degree1).or_default();
        let acc = if s.group == Group::Shifted { sh } else { ct };
        acc.n += 1;
        acc.core += s.delta_core;
        acc.total += s.delta_total;
    }
    let mean = |sum: i64, n: usize| sum as f64 / n as f64;
    let rows: Vec<ShiftRow> = buckets
        .into_iter()
        .map(|(degree, (sh, ct))| ShiftRow {
            degree,
            shifted: sh.n,
            controls: ct.n,
            shifted_delta_core: mean(sh.core, sh.n),
            control_delta_core: (ct.n > 0).then(|| mean(ct.core, ct.n)),
            shifted_delta_total: mean(sh.total, sh.n),
            control_delta_total: (ct.n > 0).then(|| mean(ct.total, ct.n)),
        })
        .collect();
    let unmatched = rows.iter().filter(|r| r.controls == 0).map(|r| r.shifted).sum();
    ShiftStats { rows, unmatched, nodes }
}
