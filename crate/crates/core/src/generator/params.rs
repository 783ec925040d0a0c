use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which growth model to run: `A` is unweighted and degree-driven, `B` is
/// weighted, strength-driven and applies BBV load redistribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Model {
    #[serde(rename = "a", alias = "A")]
    A,
    #[serde(rename = "b", alias = "B")]
    B,
}

/// Quantity a preferential choice is proportional to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Preference {
    Degree,
    Strength,
}

/// How the weighted model picks the two hops of a triad-formation link.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TriadWeighting {
    /// Neighbor drawn proportional to the weight of the connecting edge.
    EdgeWeight,
    /// Neighbor drawn proportional to its total strength.
    Strength,
}

/// Where the weighted model redistributes load after a new edge lands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BbvScope {
    /// At the existing endpoint of every new edge: arrivals, core
    /// promotion and triad links.
    AllSteps,
    /// Only at the targets of a newly arriving node.
    ArrivalsOnly,
}

/// Complete configuration of one generation run.
///
/// Deserializes from JSON with every field optional; missing fields take the
/// documented defaults (`c=6, n0=3, m=4, f=0.75, p=0.4, q=0.01, r=0.006,
/// w0=1, delta=1`, 20,000 final nodes).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelParams {
    pub model: Model,
    /// Number of communities.
    pub c: u32,
    /// Size of each community's seed clique.
    pub n0: u32,
    /// Seed inter-community link probability, reused as the probability a
    /// promoted node links to each existing core node.
    pub p: f64,
    /// Links made by each arriving node.
    pub m: u32,
    /// Fraction of an arrival's links placed inside its own community.
    pub f: f64,
    /// Per-step probability of promoting a periphery node to the core.
    pub q: f64,
    /// Per-node, per-step probability of making a triad-formation link.
    pub r: f64,
    /// Initial weight of new edges and the triad reinforcement increment.
    /// Fixed to 1 for model A.
    pub w0: f64,
    /// Load redistributed around an endpoint receiving a new edge (model B).
    pub delta: f64,
    /// Number of node arrivals after the seed graph.
    pub steps: u64,
    pub seed: u64,
    pub triad_weighting: TriadWeighting,
    pub bbv_scope: BbvScope,
}

impl Default for ModelParams {
    fn default() -> Self {
        Self {
            model: Model::A,
            c: 6,
            n0: 3,
            p: 0.4,
            m: 4,
            f: 0.75,
            q: 0.01,
            r: 0.006,
            w0: 1.0,
            delta: 1.0,
            steps: 20_000 - 18,
            seed: 0,
            triad_weighting: TriadWeighting::EdgeWeight,
            bbv_scope: BbvScope::AllSteps,
        }
    }
}

impl ModelParams {
    pub fn model_a() -> Self {
        Self::default()
    }

    pub fn model_b() -> Self {
        Self { model: Model::B, ..Self::default() }
    }

    pub fn seed_nodes(&self) -> u64 {
        self.c as u64 * self.n0 as u64
    }

    /// Sets `steps` so the generated graph ends with `nodes` nodes.
    pub fn with_nodes(mut self, nodes: u64) -> Result<Self> {
        let seed = self.seed_nodes();
        if nodes < seed {
            return Err(Error::InvalidParams(format!(
                "{nodes} nodes is fewer than the {seed} seed nodes"
            )));
        }
        self.steps = nodes - seed;
        Ok(self)
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn final_nodes(&self) -> u64 {
        self.seed_nodes() + self.steps
    }

    pub fn preference(&self) -> Preference {
        match self.model {
            Model::A => Preference::Degree,
            Model::B => Preference::Strength,
        }
    }

    /// Weight given to new edges: `w0` for model B, 1 for model A.
    pub fn edge_weight(&self) -> f64 {
        match self.model {
            Model::A => 1.0,
            Model::B => self.w0,
        }
    }

    /// Intra-community links per arrival: `m * f` rounded half-up.
    pub fn intra_links(&self) -> u32 {
        let exact = self.m as f64 * self.f;
        ((exact + 0.5).floor() as u32).min(self.m)
    }

    pub fn inter_links(&self) -> u32 {
        self.m - self.intra_links()
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        let prob = |x: f64| (0.0..=1.0).contains(&x);
        if self.c < 1 {
            return bad("c must be at least 1".into());
        }
        if self.n0 < 2 {
            return bad(format!("n0 must be at least 2, got {}", self.n0));
        }
        if !(self.p > 0.0 && self.p <= 1.0) {
            return bad(format!("p must lie in (0, 1], got {}", self.p));
        }
        if self.m < 1 {
            return bad("m must be at least 1".into());
        }
        for (name, v) in [("f", self.f), ("q", self.q), ("r", self.r)] {
            if !prob(v) {
                return bad(format!("{name} must lie in [0, 1], got {v}"));
            }
        }
        if self.model == Model::B {
            if !(self.w0.is_finite() && self.w0 > 0.0) {
                return bad(format!("w0 must be positive, got {}", self.w0));
            }
            if !(self.delta.is_finite() && self.delta >= 0.0) {
                return bad(format!("delta must be nonnegative, got {}", self.delta));
            }
        }
        if self.final_nodes() > u32::MAX as u64 {
            return bad("node count exceeds the u32 id space".into());
        }
        Ok(())
    }
}
