//! Multi-seed experiments: core-detection efficiency across network sizes,
//! fitted exponents, structural profiles and synthetic core-shift trials.
//!
//! These drive both the `repro-paper` command and the acceptance tests.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corecheck;
use crate::decomposition::{k_shell, s_shell, ShellMap};
use crate::error::{Error, Result};
use crate::generator::{generate, Model, ModelParams};
use crate::graph::{LabeledGraph, NodeId};
use crate::metrics::distribution::{samples, Quantity};
use crate::metrics::powerlaw::{fit_scanning_x_min, least_squares_slope, PowerLawFit};
use crate::metrics::profile::{knn_decile_means, profile_by_degree, ProfileQuantity};
use crate::metrics::{distribution, fit_quantity, Binning};
use crate::temporal::{shift_analysis, ShiftSummary, SnapshotPair};

pub const SWEEP_SIZES: [u64; 5] = [10_000, 20_000, 30_000, 40_000, 50_000];
pub const SWEEP_SEEDS: [u64; 5] = [1, 2, 3, 4, 5];
/// Share of nodes expected in the core.
pub const CORE_FRACTION: f64 = 0.01;

/// K-shells for unweighted graphs, S-shells for weighted ones.
pub fn shells_for(g: &LabeledGraph, model: Model) -> Result<ShellMap> {
    match model {
        Model::A => k_shell(g),
        Model::B => s_shell(g),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyRun {
    pub model: Model,
    pub nodes: usize,
    pub edges: usize,
    pub seed: u64,
    pub delta: f64,
    pub detected: usize,
    pub marked: usize,
    pub misidentified: usize,
    pub efficiency_pct: f64,
    pub seconds: f64,
}

/// Generates one network and scores shell-based core detection against the
/// generator's core labels.
pub fn efficiency_run(params: &ModelParams, fraction: f64) -> Result<EfficiencyRun> {
    let started = Instant::now();
    let g = generate(params)?;
    let shells = shells_for(&g, params.model)?;
    let marked: BTreeSet<NodeId> = g.core_nodes().into_iter().collect();
    let report = corecheck::validate(&shells, &marked, fraction)?;
    Ok(EfficiencyRun {
        model: params.model,
        nodes: g.node_count(),
        edges: g.edge_count(),
        seed: params.seed,
        delta: params.delta,
        detected: report.detected_core.len(),
        marked: marked.len(),
        misidentified: report.misidentified,
        efficiency_pct: report.efficiency_pct,
        seconds: started.elapsed().as_secs_f64(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub nodes: u64,
    pub mean_efficiency_pct: f64,
    pub runs: Vec<EfficiencyRun>,
}

/// Runs `base` at every size and seed, `jobs` runs at a time (0 uses every
/// core). Rows come back in the order of `sizes`; runs within a row in the
/// order of `seeds`.
pub fn efficiency_sweep(
    base: &ModelParams,
    sizes: &[u64],
    seeds: &[u64],
    fraction: f64,
    jobs: usize,
) -> Result<Vec<SweepRow>> {
    let mut tasks: Vec<(usize, usize, ModelParams)> = Vec::new();
    for (i, &n) in sizes.iter().enumerate() {
        for (j, &seed) in seeds.iter().enumerate() {
            tasks.push((i, j, base.clone().with_nodes(n)?.with_seed(seed)));
        }
    }
    // biggest runs first so the slowest ones do not start last
    tasks.sort_by_key(|t| std::cmp::Reverse(t.2.steps));
    let results = with_jobs(jobs, || {
        tasks
            .par_iter()
            .map(|(i, j, p)| efficiency_run(p, fraction).map(|r| (*i, *j, r)))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut rows: Vec<SweepRow> = sizes
        .iter()
        .map(|&nodes| SweepRow { nodes, mean_efficiency_pct: f64::NAN, runs: Vec::new() })
        .collect();
    let mut ordered = results;
    ordered.sort_by_key(|&(i, j, _)| (i, j));
    for (i, _, run) in ordered {
        rows[i].runs.push(run);
    }
    for row in &mut rows {
        row.mean_efficiency_pct = mean(row.runs.iter().map(|r| r.efficiency_pct));
    }
    Ok(rows)
}

/// Runs `f` on a pool of `jobs` threads (0 uses rayon's default).
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

pub fn mean(values: impl IntoIterator<Item = f64>) -> f64 {
    let (sum, n) = values.into_iter().fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    sum / n as f64
}

/// Median of the finite values; NaN when there are none.
pub fn median(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut v: Vec<f64> = values.into_iter().filter(|x| x.is_finite()).collect();
    if v.is_empty() {
        return f64::NAN;
    }
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len() % 2 == 1 {
        v[mid]
    } else {
        0.5 * (v[mid - 1] + v[mid])
    }
}

/// Per-size table: `nodes,mean_efficiency_pct,runs`.
pub fn sweep_table_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from("nodes,mean_efficiency_pct,runs\n");
    for r in rows {
        writeln!(out, "{},{},{}", r.nodes, r.mean_efficiency_pct, r.runs.len()).expect("in-memory write");
    }
    out
}

/// Every run: `model,nodes,seed,delta,edges,detected,marked,misidentified,efficiency_pct,seconds`.
pub fn sweep_runs_csv(rows: &[SweepRow]) -> String {
    let mut out =
        String::from("model,nodes,seed,delta,edges,detected,marked,misidentified,efficiency_pct,seconds\n");
    for r in rows.iter().flat_map(|r| &r.runs) {
        let model = match r.model {
            Model::A => "a",
            Model::B => "b",
        };
        writeln!(
            out,
            "{model},{},{},{},{},{},{},{},{},{:.3}",
            r.nodes, r.seed, r.delta, r.edges, r.detected, r.marked, r.misidentified, r.efficiency_pct, r.seconds
        )
        .expect("in-memory write");
    }
    out
}

/// Default lower cutoff for exponent fits: the arrival degree `m` for
/// degrees, `m * w0` for strengths and `w0` for edge weights.
pub fn default_x_min(params: &ModelParams, quantity: Quantity) -> f64 {
    match quantity {
        Quantity::Degree => params.m as f64,
        Quantity::Strength => params.m as f64 * params.edge_weight(),
        Quantity::EdgeWeight => params.edge_weight(),
    }
}

/// Fits of one quantity: maximum likelihood at the default cutoff (the
/// reported exponent), the least-squares slope of the log-binned density
/// over the same range, and a fit whose cutoff minimizes the KS distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantityFit {
    pub quantity: Quantity,
    pub mle: Option<PowerLawFit>,
    pub ls_slope: Option<f64>,
    pub scanned: Option<PowerLawFit>,
}

impl QuantityFit {
    pub fn gamma(&self) -> f64 {
        self.mle.as_ref().map_or(f64::NAN, |f| f.gamma)
    }
}

pub fn fit_all(g: &LabeledGraph, params: &ModelParams, quantity: Quantity) -> QuantityFit {
    let x_min = default_x_min(params, quantity);
    let mle = fit_quantity(g, quantity, x_min).ok();
    let ls_slope = distribution(g, quantity, Binning::log())
        .ok()
        .and_then(|t| least_squares_slope(&t.bins, x_min));
    let scanned = fit_scanning_x_min(&samples(g, quantity), quantity.is_discrete(), 150)
        .ok()
        .map(|(f, _)| f);
    QuantityFit { quantity, mle, ls_slope, scanned }
}

/// Exponent fits of one generated network. Strength and edge-weight fits
/// are only made for model B.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentRun {
    pub model: Model,
    pub seed: u64,
    pub fits: Vec<QuantityFit>,
    pub seconds: f64,
}

impl ExponentRun {
    pub fn fit(&self, quantity: Quantity) -> Option<&QuantityFit> {
        self.fits.iter().find(|f| f.quantity == quantity)
    }
}

pub fn exponent_run(params: &ModelParams) -> Result<ExponentRun> {
    let started = Instant::now();
    let g = generate(params)?;
    let seconds = started.elapsed().as_secs_f64();
    let quantities: &[Quantity] = match params.model {
        Model::A => &[Quantity::Degree],
        Model::B => &[Quantity::Degree, Quantity::Strength, Quantity::EdgeWeight],
    };
    let fits = quantities.iter().map(|&q| fit_all(&g, params, q)).collect();
    Ok(ExponentRun { model: params.model, seed: params.seed, fits, seconds })
}

/// `model,seed,quantity,gamma_mle,x_min,tail,ls_slope,gamma_scanned,x_min_scanned,seconds`.
pub fn exponent_csv(runs: &[ExponentRun]) -> String {
    let mut out = String::from(
        "model,seed,quantity,gamma_mle,x_min,tail,ls_slope,gamma_scanned,x_min_scanned,seconds\n",
    );
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in runs {
        let model = if r.model == Model::A { "a" } else { "b" };
        for f in &r.fits {
            writeln!(
                out,
                "{model},{},{},{},{},{},{},{},{},{:.3}",
                r.seed,
                f.quantity.name(),
                opt(f.mle.as_ref().map(|m| m.gamma)),
                opt(f.mle.as_ref().map(|m| m.x_min)),
                opt(f.mle.as_ref().map(|m| m.tail_samples as f64)),
                opt(f.ls_slope),
                opt(f.scanned.as_ref().map(|m| m.gamma)),
                opt(f.scanned.as_ref().map(|m| m.x_min)),
                r.seconds
            )
            .expect("in-memory write");
        }
    }
    out
}

/// Strength-degree log-log correlation and the nearest-neighbor degree of
/// the lowest and highest degree deciles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructureReport {
    pub strength_loglog_pearson: Option<f64>,
    pub knn_bottom_decile: Option<f64>,
    pub knn_top_decile: Option<f64>,
}

pub fn structure(g: &LabeledGraph) -> Result<StructureReport> {
    let strength = profile_by_degree(g, ProfileQuantity::Strength)?;
    let deciles = knn_decile_means(g);
    Ok(StructureReport {
        strength_loglog_pearson: strength.loglog_pearson,
        knn_bottom_decile: deciles.map(|d| d.0),
        knn_top_decile: deciles.map(|d| d.1),
    })
}

/// Snapshot sizes of a synthetic shift trial: the first snapshot holds
/// `nodes` nodes, the second `growth` more.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftTrialSpec {
    pub nodes: u64,
    pub growth: u64,
    pub fraction: f64,
}

impl Default for ShiftTrialSpec {
    fn default() -> Self {
        Self { nodes: 3_000, growth: 1_000, fraction: CORE_FRACTION }
    }
}

/// Core-shift analysis on a generator-produced snapshot pair. `None` when
/// no shifted node had a degree-matched control.
pub fn shift_trial(params: &ModelParams, spec: ShiftTrialSpec) -> Result<Option<ShiftSummary>> {
    let seeded = params.seed_nodes();
    if spec.nodes < seeded {
        return Err(Error::InvalidParams(format!(
            "first snapshot needs at least the {seeded} seed nodes"
        )));
    }
    let pair = SnapshotPair::synthetic(params, spec.nodes - seeded, spec.growth, spec.fraction)?;
    Ok(shift_analysis(&pair).summary())
}
