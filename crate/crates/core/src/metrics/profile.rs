use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, NodeId};

use super::local::{self, WeightScale};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileQuantity {
    Cc,
    Wcc,
    Knn,
    Wknn,
    Strength,
}

impl ProfileQuantity {
    pub const ALL: [ProfileQuantity; 5] = [
        ProfileQuantity::Cc,
        ProfileQuantity::Wcc,
        ProfileQuantity::Knn,
        ProfileQuantity::Wknn,
        ProfileQuantity::Strength,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProfileQuantity::Cc => "cc",
            ProfileQuantity::Wcc => "wcc",
            ProfileQuantity::Knn => "knn",
            ProfileQuantity::Wknn => "wknn",
            ProfileQuantity::Strength => "strength",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub degree: usize,
    pub mean: f64,
    pub nodes: usize,
}

/// Per-degree averages of a node-level quantity over nodes of degree >= 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub quantity: ProfileQuantity,
    pub rows: Vec<ProfileRow>,
    /// Pearson correlation of `(ln k, ln mean)` over the rows; only for the
    /// strength profile.
    pub loglog_pearson: Option<f64>,
}

impl DegreeProfile {
    /// CSV with header `degree,mean,nodes`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,mean,nodes\n");
        for r in &self.rows {
            writeln!(out, "{},{},{}", r.degree, r.mean, r.nodes).expect("String write");
        }
        out
    }
}

/// Value of `quantity` at every node of degree >= 1, computed in parallel.
pub fn node_values(g: &LabeledGraph, quantity: ProfileQuantity) -> Vec<(NodeId, f64)> {
    let divisor = local::weight_divisor(g, WeightScale::GlobalMax);
    let nodes: Vec<NodeId> = g.nodes().filter(|&x| g.degree(x) > 0).collect();
    nodes
        .par_iter()
        .map(|&x| {
            let v = match quantity {
                ProfileQuantity::Cc => local::clustering(g, x),
                ProfileQuantity::Wcc => local::weighted_clustering(g, x, divisor),
                ProfileQuantity::Knn => local::knn(g, x).expect("degree >= 1"),
                ProfileQuantity::Wknn => local::weighted_knn(g, x).expect("degree >= 1"),
                ProfileQuantity::Strength => g.strength(x),
            };
            (x, v)
        })
        .collect()
}

pub fn profile_by_degree(g: &LabeledGraph, quantity: ProfileQuantity) -> Result<DegreeProfile> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut acc: BTreeMap<usize, (f64, usize)> = BTreeMap::new();
    for (x, v) in node_values(g, quantity) {
        let e = acc.entry(g.degree(x)).or_insert((0.0, 0));
        e.0 += v;
        e.1 += 1;
    }
    let rows: Vec<ProfileRow> = acc
        .into_iter()
        .map(|(degree, (sum, nodes))| ProfileRow { degree, mean: sum / nodes as f64, nodes })
        .collect();
    let loglog_pearson = (quantity == ProfileQuantity::Strength).then(|| {
        let pts: Vec<(f64, f64)> = rows
            .iter()
            .filter(|r| r.mean > 0.0)
            .map(|r| ((r.degree as f64).ln(), r.mean.ln()))
            .collect();
        pearson(&pts)
    });
    Ok(DegreeProfile { quantity, rows, loglog_pearson: loglog_pearson.flatten() })
}

/// Pearson correlation coefficient; `None` with fewer than two points or
/// zero variance.
pub fn pearson(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for &(x, y) in points {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    (sxx > 0.0 && syy > 0.0).then(|| sxy / (sxx * syy).sqrt())
}

/// Mean nearest-neighbor degree of the bottom and top degree deciles
/// (nodes ranked by degree, ties by id; degree-0 nodes excluded).
pub fn knn_decile_means(g: &LabeledGraph) -> Option<(f64, f64)> {
    let mut values = node_values(g, ProfileQuantity::Knn);
    if values.len() < 10 {
        return None;
    }
    values.sort_by_key(|&(x, _)| (g.degree(x), x));
    let tenth = values.len() / 10;
    let mean = |s: &[(NodeId, f64)]| s.iter().map(|v| v.1).sum::<f64>() / s.len() as f64;
    Some((mean(&values[..tenth]), mean(&values[values.len() - tenth..])))
}
