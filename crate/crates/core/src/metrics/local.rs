//! Node-level clustering coefficients and nearest-neighbor degrees.

use crate::error::{Error, Result};
use crate::graph::{LabeledGraph, NodeId};

/// How edge weights are scaled before entering the weighted clustering
/// coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightScale {
    /// Divide by the largest edge weight in the graph, keeping the
    /// coefficient in `[0, 1]`.
    GlobalMax,
    /// Use weights as they are.
    Raw,
}

/// Divisor applied to edge weights under `scale`.
pub fn weight_divisor(g: &LabeledGraph, scale: WeightScale) -> f64 {
    match scale {
        WeightScale::GlobalMax => g.max_weight().unwrap_or(1.0),
        WeightScale::Raw => 1.0,
    }
}

/// Calls `f(y, z, w_xy, w_xz, w_yz)` for every ordered pair of distinct
/// neighbors `y, z` of `x` that are themselves adjacent.
fn for_each_closed_pair(g: &LabeledGraph, x: NodeId, mut f: impl FnMut(f64, f64, f64)) {
    let kx = g.degree(x);
    for (y, wxy) in g.neighbors(x) {
        if g.degree(y) < kx {
            for (z, wyz) in g.neighbors(y) {
                if let Some(wxz) = g.weight(x, z) {
                    f(wxy, wxz, wyz);
                }
            }
        } else {
            for (z, wxz) in g.neighbors(x) {
                if z == y {
                    continue;
                }
                if let Some(wyz) = g.weight(y, z) {
                    f(wxy, wxz, wyz);
                }
            }
        }
    }
}

/// Fraction of neighbor pairs of `x` that are linked; 0 below degree 2.
pub fn clustering(g: &LabeledGraph, x: NodeId) -> f64 {
    let k = g.degree(x);
    if k < 2 {
        return 0.0;
    }
    let mut ordered = 0u64;
    for_each_closed_pair(g, x, |_, _, _| ordered += 1);
    ordered as f64 / (k * (k - 1)) as f64
}

/// `1/(k(k-1)) Σ (ŵ_xy ŵ_xz ŵ_yz)^(1/3)` over ordered neighbor pairs, with
/// `ŵ = w / divisor`. Coincides with [`clustering`] when all weights equal
/// `divisor`.
pub fn weighted_clustering(g: &LabeledGraph, x: NodeId, divisor: f64) -> f64 {
    let k = g.degree(x);
    if k < 2 {
        return 0.0;
    }
    let mut sum = 0.0;
    for_each_closed_pair(g, x, |a, b, c| {
        sum += ((a / divisor) * (b / divisor) * (c / divisor)).cbrt();
    });
    sum / (k * (k - 1)) as f64
}

/// Mean degree of the neighbors of `x`.
pub fn knn(g: &LabeledGraph, x: NodeId) -> Result<f64> {
    let k = g.degree(x);
    if k == 0 {
        return Err(Error::IsolatedNode(x));
    }
    let sum: usize = g.neighbors(x).map(|(y, _)| g.degree(y)).sum();
    Ok(sum as f64 / k as f64)
}

/// Neighbor degree averaged with edge weights: `Σ w_xy k_y / s_x`.
///
/// Weights are first divided by the largest weight incident to `x`; the
/// ratio is unchanged, and on equal weights the result equals [`knn`]
/// exactly.
pub fn weighted_knn(g: &LabeledGraph, x: NodeId) -> Result<f64> {
    if g.degree(x) == 0 {
        return Err(Error::IsolatedNode(x));
    }
    let top = g.neighbors(x).map(|(_, w)| w).fold(0.0, f64::max);
    let (mut num, mut den) = (0.0, 0.0);
    for (y, w) in g.neighbors(x) {
        let w = w / top;
        num += w * g.degree(y) as f64;
        den += w;
    }
    Ok(num / den)
}
