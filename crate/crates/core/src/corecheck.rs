//! Shell-based core detection and scoring against ground-truth labels.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::decomposition::ShellMap;
use crate::error::{Error, Result};
use crate::graph::NodeId;

/// Outcome of comparing detected core nodes with the generator's labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoreReport {
    pub detected_core: BTreeSet<NodeId>,
    pub marked_core: BTreeSet<NodeId>,
    /// Size of the symmetric difference between detected and marked sets.
    pub misidentified: usize,
    pub error_pct: f64,
    pub efficiency_pct: f64,
    pub target_fraction: f64,
}

impl CoreReport {
    /// One row in the shape `nodes  detected  marked  misidentified  efficiency%`.
    pub fn table_row(&self, nodes: usize) -> String {
        format!(
            "{nodes}\t{}\t{}\t{}\t{:.2}",
            self.detected_core.len(),
            self.marked_core.len(),
            self.misidentified,
            self.efficiency_pct
        )
    }

    pub const TABLE_HEADER: &'static str = "nodes\tdetected\tmarked\tmisidentified\tefficiency_pct";
}

/// Whole shells taken from the nucleus outwards until they hold at least
/// `target_fraction * n` nodes. Shells are never split.
pub fn detect_core(shells: &ShellMap, n: usize, target_fraction: f64) -> Result<BTreeSet<NodeId>> {
    if !(target_fraction > 0.0 && target_fraction < 1.0) {
        return Err(Error::InvalidParams(format!(
            "target fraction must lie in (0, 1), got {target_fraction}"
        )));
    }
    let target = target_fraction * n as f64;
    let mut core = BTreeSet::new();
    for (_, members) in shells.shells_descending() {
        if core.len() as f64 >= target {
            break;
        }
        core.extend(members);
    }
    Ok(core)
}

/// Error is the symmetric difference relative to the marked core size, in
/// percent (not capped at 100); efficiency is its complement.
pub fn score(detected: &BTreeSet<NodeId>, marked: &BTreeSet<NodeId>) -> Result<CoreReport> {
    if marked.is_empty() {
        return Err(Error::EmptyMarkedCore);
    }
    let misidentified = detected.symmetric_difference(marked).count();
    let error_pct = 100.0 * misidentified as f64 / marked.len() as f64;
    Ok(CoreReport {
        detected_core: detected.clone(),
        marked_core: marked.clone(),
        misidentified,
        error_pct,
        efficiency_pct: 100.0 - error_pct,
        target_fraction: f64::NAN,
    })
}

/// Detects the core at `target_fraction` and scores it against `marked`.
pub fn validate(shells: &ShellMap, marked: &BTreeSet<NodeId>, target_fraction: f64) -> Result<CoreReport> {
    let detected = detect_core(shells, shells.len(), target_fraction)?;
    let mut report = score(&detected, marked)?;
    report.target_fraction = target_fraction;
    Ok(report)
}
