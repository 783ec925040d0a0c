use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

use super::powerlaw::{self, FitMethod, PowerLawFit};

/// Default ratio between consecutive logarithmic bin edges.
pub const LOG_BIN_RATIO: f64 = 1.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    Degree,
    Strength,
    EdgeWeight,
}

impl Quantity {
    pub fn name(self) -> &'static str {
        match self {
            Quantity::Degree => "degree",
            Quantity::Strength => "strength",
            Quantity::EdgeWeight => "edge_weight",
        }
    }

    pub fn is_discrete(self) -> bool {
        self == Quantity::Degree
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Binning {
    /// One bin per distinct value; probabilities sum to one.
    Raw,
    /// Geometric bins with the given edge ratio; each bin reports the
    /// probability density (count / total / bin width) at the bin's
    /// geometric center. Nonpositive values are left out.
    Logarithmic { ratio: f64 },
}

impl Binning {
    pub fn log() -> Self {
        Binning::Logarithmic { ratio: LOG_BIN_RATIO }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionTable {
    pub quantity: Quantity,
    pub binning: Binning,
    /// Ascending `(value, probability)` pairs.
    pub bins: Vec<(f64, f64)>,
    /// Log-bin edges (`bins.len() + 1` of them); empty for raw binning.
    pub edges: Vec<f64>,
    pub fit: Option<PowerLawFit>,
}

impl DistributionTable {
    pub fn fitted_gamma(&self) -> Option<f64> {
        self.fit.as_ref().map(|f| f.gamma)
    }

    pub fn fit_method(&self) -> Option<FitMethod> {
        self.fit.as_ref().map(|f| f.method)
    }

    pub fn fit_range(&self) -> Option<(f64, f64)> {
        self.fit.as_ref().map(|f| (f.x_min, f.x_max))
    }

    /// CSV with header `value,probability,fitted_gamma,fit_min,fit_max`; the
    /// fit columns repeat on every row and are blank without a fit.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("value,probability,fitted_gamma,fit_min,fit_max\n");
        let fit = match &self.fit {
            Some(f) => format!("{},{},{}", f.gamma, f.x_min, f.x_max),
            None => ",,".to_string(),
        };
        for &(v, p) in &self.bins {
            writeln!(out, "{v},{p},{fit}").expect("writing to a String cannot fail");
        }
        out
    }
}

/// Raw per-node or per-edge samples of a quantity.
pub fn samples(g: &LabeledGraph, quantity: Quantity) -> Vec<f64> {
    match quantity {
        Quantity::Degree => g.nodes().map(|x| g.degree(x) as f64).collect(),
        Quantity::Strength => g.nodes().map(|x| g.strength(x)).collect(),
        Quantity::EdgeWeight => g.edges().map(|(_, _, w)| w).collect(),
    }
}

pub fn distribution(g: &LabeledGraph, quantity: Quantity, binning: Binning) -> Result<DistributionTable> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if quantity == Quantity::EdgeWeight && g.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    table_from_samples(&samples(g, quantity), quantity, binning)
}

pub fn table_from_samples(values: &[f64], quantity: Quantity, binning: Binning) -> Result<DistributionTable> {
    if values.is_empty() {
        return Err(Error::InsufficientSamples { needed: 1, have: 0 });
    }
    let total = values.len() as f64;
    let (bins, edges) = match binning {
        Binning::Raw => {
            let mut counts: BTreeMap<u64, (f64, usize)> = BTreeMap::new();
            for &v in values {
                // order-preserving key for nonnegative floats
                counts.entry(v.to_bits()).or_insert((v, 0)).1 += 1;
            }
            let mut bins: Vec<(f64, f64)> =
                counts.into_values().map(|(v, c)| (v, c as f64 / total)).collect();
            bins.sort_by(|a, b| a.0.total_cmp(&b.0));
            (bins, Vec::new())
        }
        Binning::Logarithmic { ratio } => log_bins(values, total, ratio)?,
    };
    Ok(DistributionTable { quantity, binning, bins, edges, fit: None })
}

fn log_bins(values: &[f64], total: f64, ratio: f64) -> Result<(Vec<(f64, f64)>, Vec<f64>)> {
    if !(ratio > 1.0) {
        return Err(Error::InvalidParams(format!("log bin ratio must exceed 1, got {ratio}")));
    }
    let positive: Vec<f64> = values.iter().copied().filter(|&v| v > 0.0).collect();
    let Some(lo) = positive.iter().copied().reduce(f64::min) else {
        return Ok((Vec::new(), Vec::new()));
    };
    let hi = positive.iter().copied().fold(lo, f64::max);
    let mut edges = vec![lo];
    while *edges.last().unwrap() <= hi {
        let next = edges.last().unwrap() * ratio;
        edges.push(next);
    }
    let mut counts = vec![0usize; edges.len() - 1];
    for &v in &positive {
        let i = ((v / lo).ln() / ratio.ln()).floor() as usize;
        // guard against rounding at bin boundaries
        let mut i = i.min(counts.len() - 1);
        while i > 0 && v < edges[i] {
            i -= 1;
        }
        while i + 1 < counts.len() && v >= edges[i + 1] {
            i += 1;
        }
        counts[i] += 1;
    }
    let bins = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, &c)| {
            let (a, b) = (edges[i], edges[i + 1]);
            ((a * b).sqrt(), c as f64 / total / (b - a))
        })
        .collect();
    Ok((bins, edges))
}

/// Fits a power law to the quantity's samples at or above `x_min`: the
/// discrete MLE for degrees, the continuous MLE otherwise.
pub fn fit_quantity(g: &LabeledGraph, quantity: Quantity, x_min: f64) -> Result<PowerLawFit> {
    let values = samples(g, quantity);
    fit_samples(&values, quantity.is_discrete(), x_min)
}

pub fn fit_samples(values: &[f64], discrete: bool, x_min: f64) -> Result<PowerLawFit> {
    if discrete {
        let ints: Vec<u64> = values.iter().map(|&v| v.round() as u64).collect();
        powerlaw::fit_discrete(&ints, x_min.ceil() as u64)
    } else {
        powerlaw::fit_continuous(values, x_min)
    }
}

/// Distribution plus a power-law fit over `x_min` and above. Also returns
/// the least-squares slope of the log-binned density over the same range
/// as a diagnostic.
pub fn fitted_distribution(
    g: &LabeledGraph,
    quantity: Quantity,
    binning: Binning,
    x_min: f64,
) -> Result<(DistributionTable, Option<f64>)> {
    let mut table = distribution(g, quantity, binning)?;
    table.fit = Some(fit_quantity(g, quantity, x_min)?);
    let log_table = match binning {
        Binning::Logarithmic { .. } => table.clone(),
        Binning::Raw => distribution(g, quantity, Binning::log())?,
    };
    let slope = powerlaw::least_squares_slope(&log_table.bins, x_min);
    Ok((table, slope))
}
