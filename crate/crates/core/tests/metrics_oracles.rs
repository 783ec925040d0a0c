mod common;

use common::DiscretePowerLaw;
use mesonet::generator::rng_for;
use mesonet::metrics::distribution::{table_from_samples, LOG_BIN_RATIO};
use mesonet::metrics::{
    clustering, fit_continuous, fit_discrete, knn, profile_by_degree, weighted_clustering, weighted_knn, Binning,
    ProfileQuantity, Quantity,
};
use mesonet::{generate, LabeledGraph, ModelParams, NodeId};
use proptest::prelude::*;
use rand::Rng;

fn adjacency(n: u32, edges: &[(NodeId, NodeId)]) -> Vec<Vec<bool>> {
    let mut a = vec![vec![false; n as usize]; n as usize];
    for &(u, v) in edges {
        a[u as usize][v as usize] = true;
        a[v as usize][u as usize] = true;
    }
    a
}

/// Linked neighbor pairs over all neighbor pairs, from the adjacency matrix.
fn clustering_oracle(a: &[Vec<bool>], x: usize) -> f64 {
    let nb: Vec<usize> = (0..a.len()).filter(|&y| a[x][y]).collect();
    let k = nb.len();
    if k < 2 {
        return 0.0;
    }
    let mut closed = 0;
    for i in 0..k {
        for j in i + 1..k {
            if a[nb[i]][nb[j]] {
                closed += 1;
            }
        }
    }
    closed as f64 / (k * (k - 1) / 2) as f64
}

#[test]
fn discrete_mle_recovers_two_and_a_half() {
    let law = DiscretePowerLaw::new(2.5, 1);
    let mut within = 0;
    for trial in 0..20 {
        let mut rng = rng_for(1000 + trial, 5);
        let samples: Vec<u64> = (0..100_000).map(|_| law.sample(&mut rng)).collect();
        let fit = fit_discrete(&samples, 1).unwrap();
        assert_eq!(fit.tail_samples, 100_000);
        if (fit.gamma - 2.5).abs() <= 0.05 {
            within += 1;
        }
    }
    assert!(within >= 19, "{within}/20 trials within 0.05");
}

#[test]
fn discrete_mle_with_a_raised_cutoff() {
    let law = DiscretePowerLaw::new(3.0, 4);
    let mut rng = rng_for(8, 5);
    // mix in values below the cutoff, which the fit must ignore
    let mut samples: Vec<u64> = (0..50_000).map(|_| law.sample(&mut rng)).collect();
    samples.extend((0..20_000).map(|_| rng.gen_range(1..4)));
    let fit = fit_discrete(&samples, 4).unwrap();
    assert_eq!(fit.tail_samples, 50_000);
    assert!((fit.gamma - 3.0).abs() < 4.0 * fit.std_err, "{fit:?}");
}

#[test]
fn continuous_mle_recovers_inverse_cdf_samples() {
    let (gamma, x_min) = (3.5, 1.0);
    let mut rng = rng_for(12, 5);
    let samples: Vec<f64> =
        (0..100_000).map(|_| x_min * (1.0 - rng.gen::<f64>()).powf(-1.0 / (gamma - 1.0))).collect();
    let fit = fit_continuous(&samples, x_min).unwrap();
    // standard error (gamma - 1) / sqrt(n) ≈ 0.008
    assert!((fit.gamma - gamma).abs() < 0.04, "{fit:?}");
    assert!((fit.std_err - 2.5 / 100_000f64.sqrt()).abs() < 1e-3);
}

#[test]
fn log_bins_of_power_law_have_the_right_slope() {
    let law = DiscretePowerLaw::new(2.5, 1);
    let mut rng = rng_for(3, 5);
    let samples: Vec<f64> = (0..200_000).map(|_| law.sample(&mut rng) as f64).collect();
    let table = table_from_samples(&samples, Quantity::Degree, Binning::log()).unwrap();
    for w in table.edges.windows(2) {
        assert!((w[1] / w[0] - LOG_BIN_RATIO).abs() < 1e-9);
    }
    let slope = mesonet::metrics::powerlaw::least_squares_slope(&table.bins, 10.0).unwrap();
    assert!((slope - 2.5).abs() < 0.25, "slope {slope}");
}

proptest! {
    #[test]
    fn clustering_matches_pair_counting((n, edges) in common::unit_graph(10)) {
        let g = common::build(n, 1, &common::unit(&edges));
        let a = adjacency(n, &edges);
        for x in g.nodes() {
            prop_assert!((clustering(&g, x) - clustering_oracle(&a, x as usize)).abs() < 1e-12);
        }
    }

    #[test]
    fn equal_weights_reduce_to_unweighted_exactly((n, edges) in common::unit_graph(10), w in 0.1f64..20.0) {
        let g = common::build(n, 1, &edges.iter().map(|&(u, v)| (u, v, w)).collect::<Vec<_>>());
        let divisor = g.max_weight().unwrap_or(1.0);
        for x in g.nodes() {
            prop_assert_eq!(weighted_clustering(&g, x, divisor), clustering(&g, x));
            if g.degree(x) > 0 {
                prop_assert_eq!(weighted_knn(&g, x).unwrap(), knn(&g, x).unwrap());
            }
        }
    }

    #[test]
    fn clustering_stays_in_unit_interval((n, edges) in common::weighted_graph(10)) {
        let g = common::build(n, 1, &edges);
        let divisor = g.max_weight().unwrap_or(1.0);
        for x in g.nodes() {
            let (c, cw) = (clustering(&g, x), weighted_clustering(&g, x, divisor));
            prop_assert!((0.0..=1.0).contains(&c));
            prop_assert!((0.0..=1.0 + 1e-12).contains(&cw));
            prop_assert!(cw <= c + 1e-12);
        }
    }

    #[test]
    fn knn_is_mean_neighbor_degree((n, edges) in common::weighted_graph(10)) {
        let g = common::build(n, 1, &edges);
        let a = adjacency(n, &edges.iter().map(|e| (e.0, e.1)).collect::<Vec<_>>());
        let deg: Vec<usize> = a.iter().map(|r| r.iter().filter(|&&b| b).count()).collect();
        for x in 0..n as usize {
            if deg[x] == 0 {
                prop_assert!(knn(&g, x as NodeId).is_err());
                continue;
            }
            let nb: Vec<usize> = (0..n as usize).filter(|&y| a[x][y]).collect();
            let plain = nb.iter().map(|&y| deg[y] as f64).sum::<f64>() / nb.len() as f64;
            prop_assert!((knn(&g, x as NodeId).unwrap() - plain).abs() < 1e-12);
            let (mut num, mut den) = (0.0, 0.0);
            for &y in &nb {
                let w = g.weight(x as NodeId, y as NodeId).unwrap();
                num += w * deg[y] as f64;
                den += w;
            }
            prop_assert!((weighted_knn(&g, x as NodeId).unwrap() - num / den).abs() < 1e-9 * (num / den));
        }
    }

    #[test]
    fn raw_distribution_sums_to_one(values in proptest::collection::vec(0u32..40, 1..300)) {
        let samples: Vec<f64> = values.iter().map(|&v| v as f64).collect();
        let t = table_from_samples(&samples, Quantity::Degree, Binning::Raw).unwrap();
        let total: f64 = t.bins.iter().map(|b| b.1).sum();
        prop_assert!((total - 1.0).abs() < 1e-9);
        prop_assert!(t.bins.iter().all(|b| b.1 > 0.0));
    }
}

/// Profiles as plain per-degree averages of the node-level functions.
#[test]
fn profiles_average_node_values_by_degree() {
    let g: LabeledGraph = generate(&ModelParams::model_b().with_nodes(600).unwrap().with_seed(2)).unwrap();
    let divisor = g.max_weight().unwrap();
    for q in ProfileQuantity::ALL {
        let p = profile_by_degree(&g, q).unwrap();
        let nodes: usize = p.rows.iter().map(|r| r.nodes).sum();
        assert_eq!(nodes, g.nodes().filter(|&x| g.degree(x) > 0).count());
        for row in &p.rows {
            let members: Vec<NodeId> = g.nodes().filter(|&x| g.degree(x) == row.degree).collect();
            let value = |x| match q {
                ProfileQuantity::Cc => clustering(&g, x),
                ProfileQuantity::Wcc => weighted_clustering(&g, x, divisor),
                ProfileQuantity::Knn => knn(&g, x).unwrap(),
                ProfileQuantity::Wknn => weighted_knn(&g, x).unwrap(),
                ProfileQuantity::Strength => g.strength(x),
            };
            let mean = members.iter().map(|&x| value(x)).sum::<f64>() / members.len() as f64;
            assert!((row.mean - mean).abs() <= 1e-9 * mean.abs().max(1.0), "{q:?} at degree {}", row.degree);
        }
    }
}
