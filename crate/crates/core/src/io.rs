//! Edge-list and label-sidecar serialization.
//!
//! Edge lists hold one edge per line as `u<TAB>v<TAB>w`. Weights are written
//! with Rust's shortest round-trip float formatting, so reading a file back
//! reproduces every weight bit for bit. The sidecar is a JSON document whose
//! `nodes` object maps node id to `{community, type}`; an optional `params`
//! value records the configuration that produced the graph.

use std::collections::BTreeMap;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, NodeId, NodeType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeLabel {
    pub community: u32,
    #[serde(rename = "type")]
    pub node_type: NodeType,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelSidecar {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<serde_json::Value>,
    pub nodes: BTreeMap<NodeId, NodeLabel>,
}

impl LabelSidecar {
    pub fn from_graph(g: &LabeledGraph, params: Option<serde_json::Value>) -> Self {
        let nodes = g
            .nodes()
            .map(|x| {
                let label = NodeLabel { community: g.community(x), node_type: g.node_type(x) };
                (x, label)
            })
            .collect();
        Self { params, nodes }
    }

    pub fn marked_core(&self) -> Vec<NodeId> {
        self.nodes
            .iter()
            .filter(|(_, l)| l.node_type == NodeType::Core)
            .map(|(&x, _)| x)
            .collect()
    }
}

pub fn write_edge_list<W: Write>(g: &LabeledGraph, out: W) -> Result<()> {
    let mut out = BufWriter::new(out);
    for (u, v, w) in g.edges() {
        writeln!(out, "{u}\t{v}\t{w}")?;
    }
    out.flush()?;
    Ok(())
}

pub fn edge_list_string(g: &LabeledGraph) -> String {
    let mut buf = Vec::new();
    write_edge_list(g, &mut buf).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("edge list is ascii")
}

/// Parses `u v [w]` lines (tab or space separated; `#` starts a comment).
/// A missing weight defaults to 1. Repeated pairs reinforce the edge.
pub fn parse_edge_list<R: BufRead>(
    input: R,
    source: &Path,
) -> Result<Vec<(NodeId, NodeId, f64)>> {
    let mut edges = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line?;
        let line_no = idx + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { path: source.to_path_buf(), line: line_no, msg };
        let fields: Vec<&str> = body.split_whitespace().collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(err(format!("expected `u v [w]`, found {} fields", fields.len())));
        }
        let id = |s: &str| s.parse::<NodeId>().map_err(|e| err(format!("bad node id `{s}`: {e}")));
        let u = id(fields[0])?;
        let v = id(fields[1])?;
        let w = match fields.get(2) {
            Some(s) => s.parse::<f64>().map_err(|e| err(format!("bad weight `{s}`: {e}")))?,
            None => 1.0,
        };
        if u == v {
            return Err(err(format!("self-loop on node {u}")));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(err(format!("weight must be positive, got {w}")));
        }
        edges.push((u, v, w));
    }
    Ok(edges)
}

/// Reads an edge list and (optionally) its label sidecar into a graph.
///
/// The node count is the larger of the sidecar's node count and the largest
/// id in the edge list plus one; nodes without a label default to community
/// 0 and periphery.
pub fn read_graph(edges_path: &Path, labels_path: Option<&Path>) -> Result<LabeledGraph> {
    let file = fs::File::open(edges_path)?;
    let edges = parse_edge_list(BufReader::new(file), edges_path)?;
    let labels = match labels_path {
        Some(p) => Some(read_labels(p)?),
        None => None,
    };
    build_graph(&edges, labels.as_ref())
}

pub fn build_graph(
    edges: &[(NodeId, NodeId, f64)],
    labels: Option<&LabelSidecar>,
) -> Result<LabeledGraph> {
    let max_edge_id = edges.iter().map(|&(u, v, _)| u.max(v) as usize + 1).max().unwrap_or(0);
    let max_label_id = labels
        .and_then(|l| l.nodes.keys().next_back())
        .map_or(0, |&x| x as usize + 1);
    let n = max_edge_id.max(max_label_id);
    let mut g = LabeledGraph::with_capacity(n);
    for x in 0..n as NodeId {
        let label = labels.and_then(|l| l.nodes.get(&x)).copied().unwrap_or(NodeLabel {
            community: 0,
            node_type: NodeType::Periphery,
        });
        g.add_node(label.community, label.node_type);
    }
    for &(u, v, w) in edges {
        g.add_edge(u, v, w)?;
    }
    Ok(g)
}

pub fn read_labels(path: &Path) -> Result<LabelSidecar> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn labels_string(labels: &LabelSidecar) -> Result<String> {
    let mut s = serde_json::to_string_pretty(labels)?;
    s.push('\n');
    Ok(s)
}

/// Writes `contents` to `path` via a temporary sibling file and a rename, so
/// readers never observe a partially written file.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::Format(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Like [`write_atomic`] but refuses to replace an existing file: the
/// temporary file is hard-linked into place, which fails if `path` exists.
pub fn write_new_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| Error::Format(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.new{}", name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
    }
    let linked = fs::hard_link(&tmp, path);
    fs::remove_file(&tmp)?;
    linked.map_err(|e| {
        if e.kind() == std::io::ErrorKind::AlreadyExists {
            Error::Format(format!("{} already exists", path.display()))
        } else {
            e.into()
        }
    })
}
