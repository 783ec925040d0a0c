//! Acceptance suite. Prints one PASS/FAIL line per criterion and always
//! exits 0; the verdicts are the output. Set `MESONET_ACCEPTANCE_QUICK=1`
//! to shrink the network-scale checks to a smoke run (their verdicts then
//! say nothing about the full-size targets).

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use common::DiscretePowerLaw;
use mesonet::decomposition::k_shell;
use mesonet::generator::{bbv_redistribute, rng_for, Preference, PreferentialSampler};
use mesonet::metrics::{clustering, fit_discrete, weighted_clustering, Quantity};
use mesonet::repro::{self, ShiftTrialSpec, SweepRow};
use mesonet::{generate, LabeledGraph, ModelParams, NodeId, NodeType};
use rand::Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};

const TABLE_UNWEIGHTED: [f64; 5] = [96.94, 98.02, 98.35, 98.54, 98.83];
const TABLE_WEIGHTED: [f64; 5] = [96.33, 96.49, 97.13, 97.56, 98.02];
const TABLE_TOLERANCE: f64 = 2.0;

struct Scale {
    quick: bool,
    sizes: Vec<u64>,
    seeds: Vec<u64>,
    reference_nodes: u64,
    shift_trials: u64,
}

impl Scale {
    fn from_env() -> Self {
        if std::env::var_os("MESONET_ACCEPTANCE_QUICK").is_some_and(|v| v != "0") {
            Scale { quick: true, sizes: vec![1_000, 2_000], seeds: vec![1, 2], reference_nodes: 2_000, shift_trials: 5 }
        } else {
            Scale {
                quick: false,
                sizes: repro::SWEEP_SIZES.to_vec(),
                seeds: repro::SWEEP_SEEDS.to_vec(),
                reference_nodes: 20_000,
                shift_trials: 20,
            }
        }
    }
}

fn report(name: &str, pass: bool, detail: String) {
    println!("{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
}

fn secs(d: Duration) -> String {
    format!("{:.1}s", d.as_secs_f64())
}

fn kcore_oracle(g: &LabeledGraph) -> Vec<u32> {
    let mut best = vec![0u32; g.node_count()];
    let max_deg = g.nodes().map(|x| g.degree(x)).max().unwrap_or(0);
    for k in 1..=max_deg {
        let mut alive: BTreeSet<NodeId> = g.nodes().collect();
        loop {
            let drop: Vec<NodeId> = alive
                .iter()
                .copied()
                .filter(|&x| g.neighbors(x).filter(|(y, _)| alive.contains(y)).count() < k)
                .collect();
            if drop.is_empty() {
                break;
            }
            for x in drop {
                alive.remove(&x);
            }
        }
        for x in alive {
            best[x as usize] = k as u32;
        }
    }
    best
}

fn random_graph(rng: &mut impl Rng, n: u32, density: f64, communities: u32, weights: (f64, f64)) -> LabeledGraph {
    let mut g = LabeledGraph::new();
    for x in 0..n {
        g.add_node(x % communities, NodeType::Periphery);
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < density {
                let w = if weights.0 == weights.1 { weights.0 } else { rng.gen_range(weights.0..weights.1) };
                g.add_edge(u, v, w).unwrap();
            }
        }
    }
    g
}

fn shell_oracle_equivalence() {
    let started = Instant::now();
    let mut rng = rng_for(2024, 7);
    let mut mismatches = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=12);
        let density = rng.gen();
        let g = random_graph(&mut rng, n, density, 1, (1.0, 1.0));
        if k_shell(&g).unwrap().shells() != kcore_oracle(&g).as_slice() {
            mismatches += 1;
        }
    }
    let took = started.elapsed();
    report(
        "shell decomposition matches brute-force k-core oracle",
        mismatches == 0 && took < Duration::from_secs(10),
        format!("{mismatches} mismatches on 1000 graphs, {}", secs(took)),
    );
}

fn bbv_conservation() {
    let mut rng = rng_for(1, 9);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let k = rng.gen_range(1..12);
        let mut g = LabeledGraph::new();
        for _ in 0..=k {
            g.add_node(0, NodeType::Periphery);
        }
        for z in 1..=k {
            g.add_edge(0, z, rng.gen_range(0.01..50.0)).unwrap();
        }
        let delta = rng.gen_range(0.0..5.0);
        let before = g.strength(0);
        bbv_redistribute(&mut g, 0, delta, None).unwrap();
        let rel = ((g.strength(0) - before) - delta).abs() / (before + delta);
        worst = worst.max(rel);
    }
    report(
        "redistribution raises strength by exactly delta",
        worst <= 1e-9,
        format!("10000 calls, worst relative error {worst:.2e}"),
    );
}

fn chi_square_p(counts: &BTreeMap<NodeId, usize>, expected: &BTreeMap<NodeId, f64>, draws: usize) -> f64 {
    if counts.keys().any(|k| !expected.contains_key(k)) {
        return 0.0;
    }
    let stat: f64 = expected
        .iter()
        .map(|(k, &p)| {
            let e = p * draws as f64;
            let o = counts.get(k).copied().unwrap_or(0) as f64;
            (o - e).powi(2) / e
        })
        .sum();
    ChiSquared::new((expected.len() - 1) as f64).unwrap().sf(stat)
}

fn sampling_fidelity() {
    const DRAWS: usize = 100_000;
    let mut rng = rng_for(77, 3);
    let n = 60u32;
    let g = random_graph(&mut rng, n, 0.08, 3, (0.2, 6.0));
    let x: NodeId = 4;
    let exclude: Vec<NodeId> = vec![1, 2, 7];
    let mut ps = Vec::new();
    for pref in [Preference::Degree, Preference::Strength] {
        let sampler = PreferentialSampler::new(&g, pref);
        for intra in [true, false] {
            // exact weights edge by edge over the frozen graph
            let mut weight = vec![0.0; n as usize];
            for (u, v, w) in g.edges() {
                if (g.community(u) == g.community(v)) == intra {
                    let w = if pref == Preference::Degree { 1.0 } else { w };
                    weight[u as usize] += w;
                    weight[v as usize] += w;
                }
            }
            let eligible = |y: NodeId| {
                let same = g.community(y) == g.community(x);
                same == intra && y != x && !exclude.contains(&y) && weight[y as usize] > 0.0
            };
            let total: f64 = (0..n).filter(|&y| eligible(y)).map(|y| weight[y as usize]).sum();
            let expected: BTreeMap<NodeId, f64> =
                (0..n).filter(|&y| eligible(y)).map(|y| (y, weight[y as usize] / total)).collect();
            let mut counts = BTreeMap::new();
            for _ in 0..DRAWS {
                let y = if intra { sampler.intra(x, &exclude, &mut rng) } else { sampler.inter(x, &exclude, &mut rng) };
                *counts.entry(y.unwrap().unwrap()).or_insert(0usize) += 1;
            }
            ps.push(chi_square_p(&counts, &expected, DRAWS));
        }
    }
    let min = ps.iter().copied().fold(f64::INFINITY, f64::min);
    report(
        "preferential samplers pass chi-square against exact weights",
        min > 0.01,
        format!("4 samplers x 100000 draws, smallest p = {min:.3}"),
    );
}

fn exponent_recovery() {
    let law = DiscretePowerLaw::new(2.5, 1);
    let mut within = 0;
    let mut gammas = Vec::new();
    for trial in 0..20 {
        let mut rng = rng_for(1000 + trial, 5);
        let samples: Vec<u64> = (0..100_000).map(|_| law.sample(&mut rng)).collect();
        let gamma = fit_discrete(&samples, 1).map_or(f64::NAN, |f| f.gamma);
        if (gamma - 2.5).abs() <= 0.05 {
            within += 1;
        }
        gammas.push(gamma);
    }
    report(
        "exponent fit recovers 2.5 from sampled power law",
        within >= 19,
        format!("{within}/20 trials within 0.05, median {:.3}", repro::median(gammas)),
    );
}

fn model_exponents(scale: &Scale) {
    let mut per_quantity: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    let mut slowest = Duration::ZERO;
    for model in [ModelParams::model_a(), ModelParams::model_b()] {
        for &seed in &scale.seeds {
            let params = model.clone().with_nodes(scale.reference_nodes).unwrap().with_seed(seed);
            let started = Instant::now();
            let run = repro::exponent_run(&params).unwrap();
            slowest = slowest.max(started.elapsed());
            let targets: &[(&str, Quantity)] = match params.model {
                mesonet::Model::A => &[("A degree", Quantity::Degree)],
                mesonet::Model::B => &[("B strength", Quantity::Strength), ("B edge weight", Quantity::EdgeWeight)],
            };
            for &(name, q) in targets {
                per_quantity.entry(name).or_default().push(run.fit(q).map_or(f64::NAN, |f| f.gamma()));
            }
        }
    }
    let timely = slowest < Duration::from_secs(120);
    for (name, target, tol) in [("A degree", 2.5, 0.3), ("B strength", 2.3, 0.3), ("B edge weight", 3.5, 0.5)] {
        let med = repro::median(per_quantity[name].iter().copied());
        report(
            &format!("{name} exponent at {} nodes", scale.reference_nodes),
            (med - target).abs() <= tol && timely,
            format!(
                "median {med:.3} over {} seeds, target {target} +/- {tol}, slowest run {}",
                scale.seeds.len(),
                secs(slowest)
            ),
        );
    }
}

fn sweep_verdict(name: &str, rows: &[SweepRow], reference: &[f64; 5], took: Duration, scale: &Scale) {
    let means: Vec<f64> = rows.iter().map(|r| r.mean_efficiency_pct).collect();
    let monotone = means.windows(2).all(|w| w[1] >= w[0]);
    let close = !scale.quick
        && rows.len() == reference.len()
        && means.iter().zip(reference).all(|(m, p)| (m - p).abs() <= TABLE_TOLERANCE);
    let cells: Vec<String> = rows
        .iter()
        .zip(reference)
        .map(|(r, p)| format!("{}: {:.2} (reference {p})", r.nodes, r.mean_efficiency_pct))
        .collect();
    report(
        name,
        close && monotone && took < Duration::from_secs(30 * 60),
        format!("{}; monotone {monotone}; {}", cells.join(", "), secs(took)),
    );
}

fn table_and_delta(scale: &Scale) {
    let started = Instant::now();
    let unweighted =
        repro::efficiency_sweep(&ModelParams::model_a(), &scale.sizes, &scale.seeds, repro::CORE_FRACTION, 0).unwrap();
    let mut b = ModelParams::model_b();
    b.delta = 0.6;
    let weighted = repro::efficiency_sweep(&b, &scale.sizes, &scale.seeds, repro::CORE_FRACTION, 0).unwrap();
    let took = started.elapsed();
    sweep_verdict("efficiency table, unweighted model", &unweighted, &TABLE_UNWEIGHTED, took, scale);
    sweep_verdict("efficiency table, weighted model at delta 0.6", &weighted, &TABLE_WEIGHTED, took, scale);

    // the delta 0.6 runs at the reference size come from the sweep
    let low = match weighted.iter().find(|r| r.nodes == scale.reference_nodes) {
        Some(row) => row.mean_efficiency_pct,
        None => {
            repro::efficiency_sweep(&b, &[scale.reference_nodes], &scale.seeds, repro::CORE_FRACTION, 0).unwrap()[0]
                .mean_efficiency_pct
        }
    };
    b.delta = 1.5;
    let high = repro::efficiency_sweep(&b, &[scale.reference_nodes], &scale.seeds, repro::CORE_FRACTION, 0).unwrap()
        [0]
    .mean_efficiency_pct;
    report(
        "weighted efficiency drops as delta grows",
        high < low,
        format!("{} nodes: delta 0.6 -> {low:.2}, delta 1.5 -> {high:.2}", scale.reference_nodes),
    );
}

fn structural_profiles(scale: &Scale) {
    let g = generate(&ModelParams::model_b().with_nodes(scale.reference_nodes).unwrap().with_seed(1)).unwrap();
    let s = repro::structure(&g).unwrap();
    let r = s.strength_loglog_pearson.unwrap_or(f64::NAN);
    let (bottom, top) = (s.knn_bottom_decile.unwrap_or(f64::NAN), s.knn_top_decile.unwrap_or(f64::NAN));

    let mut rng = rng_for(31, 4);
    let mut exact = 0;
    for _ in 0..100 {
        let n = rng.gen_range(3..=15);
        let density = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, density, 1, (1.0, 1.0));
        let divisor = g.max_weight().unwrap_or(1.0);
        if g.nodes().all(|x| weighted_clustering(&g, x, divisor) == clustering(&g, x)) {
            exact += 1;
        }
    }
    report(
        "strength-degree correlation, knn trend and unit-weight clustering",
        r > 0.9 && top < bottom && exact == 100,
        format!("log-log pearson {r:.4}; knn bottom decile {bottom:.2}, top decile {top:.2}; C^w == C on {exact}/100 graphs"),
    );
}

fn core_shift(scale: &Scale) {
    let (mut core_wins, mut ratio_wins, mut empty) = (0, 0, 0);
    for seed in 1..=scale.shift_trials {
        match repro::shift_trial(&ModelParams::model_a().with_seed(seed), ShiftTrialSpec::default()).unwrap() {
            Some(s) => {
                core_wins += usize::from(s.shifted_delta_core > s.control_delta_core);
                ratio_wins += usize::from(s.core_ratio() > s.total_ratio());
            }
            None => empty += 1,
        }
    }
    let need = (0.95 * scale.shift_trials as f64).ceil() as usize;
    report(
        "nodes moving into the core gain more core links than matched controls",
        core_wins >= need && ratio_wins >= need,
        format!(
            "core-link gain {core_wins}/{n}, core ratio above total ratio {ratio_wins}/{n}, {empty} trials without matches",
            n = scale.shift_trials
        ),
    );
}

fn main() {
    let scale = Scale::from_env();
    if scale.quick {
        println!("quick mode: network-scale checks use reduced sizes");
    }
    shell_oracle_equivalence();
    bbv_conservation();
    sampling_fidelity();
    exponent_recovery();
    model_exponents(&scale);
    table_and_delta(&scale);
    structural_profiles(&scale);
    core_shift(&scale);
}
