mod common;

use mesonet::generator::bbv_redistribute;
use mesonet::{LabeledGraph, NodeType};
use proptest::prelude::*;

/// Random edge insertions (repeats reinforce) interleaved with load
/// redistribution at random nodes.
#[derive(Debug, Clone)]
enum Op {
    Add(u32, u32, f64),
    Redistribute(u32, f64, Option<u32>),
}

fn ops(n: u32) -> impl Strategy<Value = Vec<Op>> {
    let op = prop_oneof![
        3 => (0..n, 0..n, 0.1f64..5.0).prop_map(|(u, v, w)| Op::Add(u, v, w)),
        1 => (0..n, 0.0f64..3.0, proptest::option::of(0..n)).prop_map(|(y, d, ex)| Op::Redistribute(y, d, ex)),
    ];
    proptest::collection::vec(op, 0..80)
}

fn apply(n: u32, ops: &[Op]) -> (LabeledGraph, f64) {
    let mut g = LabeledGraph::new();
    for x in 0..n {
        g.add_node(x % 3, if x % 4 == 0 { NodeType::Core } else { NodeType::Periphery });
    }
    let mut added = 0.0;
    for op in ops {
        match *op {
            Op::Add(u, v, w) if u != v => {
                g.add_edge(u, v, w).unwrap();
                added += w;
            }
            Op::Add(..) => assert!(g.add_edge(0, 0, 1.0).is_err()),
            Op::Redistribute(y, delta, exclude) => {
                let exclude = exclude.filter(|&z| g.has_edge(y, z));
                bbv_redistribute(&mut g, y, delta, exclude).unwrap();
            }
        }
    }
    (g, added)
}

proptest! {
    #[test]
    fn handshake_sums_and_symmetry(n in 2u32..15, seq in ops(15)) {
        let seq: Vec<Op> = seq
            .into_iter()
            .map(|op| match op {
                Op::Add(u, v, w) => Op::Add(u % n, v % n, w),
                Op::Redistribute(y, d, ex) => Op::Redistribute(y % n, d, ex.map(|z| z % n)),
            })
            .collect();
        let (g, _) = apply(n, &seq);
        g.validate().unwrap();
        let degree_sum: usize = g.nodes().map(|x| g.degree(x)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
        prop_assert_eq!(g.edges().count(), g.edge_count());
        let strength_sum: f64 = g.nodes().map(|x| g.strength(x)).sum();
        let weight_sum: f64 = g.edges().map(|(_, _, w)| w).sum();
        prop_assert!((strength_sum - 2.0 * weight_sum).abs() <= 1e-9 * weight_sum.max(1.0));
        for (u, v, w) in g.edges() {
            prop_assert!(u < v);
            prop_assert_eq!(g.weight(v, u), Some(w));
        }
    }

    #[test]
    fn without_redistribution_weights_add_up(n in 2u32..12, seq in ops(12)) {
        let seq: Vec<Op> = seq
            .into_iter()
            .filter_map(|op| match op {
                Op::Add(u, v, w) => Some(Op::Add(u % n, v % n, w)),
                Op::Redistribute(..) => None,
            })
            .collect();
        let (g, added) = apply(n, &seq);
        let weight_sum: f64 = g.edges().map(|(_, _, w)| w).sum();
        prop_assert!((weight_sum - added).abs() <= 1e-9 * added.max(1.0));
    }

    #[test]
    fn stats_are_consistent_and_pure((n, edges) in common::weighted_graph(10)) {
        let g = common::build(n, 3, &edges);
        let before = g.clone();
        let min_w = edges.iter().map(|e| e.2).fold(f64::INFINITY, f64::min);
        for x in g.nodes() {
            let s = g.stats(x).unwrap();
            prop_assert_eq!(s.degree, s.intra_degree + s.inter_degree);
            prop_assert_eq!(s.degree, g.degree(x));
            if s.degree > 0 {
                prop_assert!(s.strength >= s.degree as f64 * min_w * (1.0 - 1e-12));
            }
        }
        prop_assert_eq!(&g, &before);
    }

    #[test]
    fn unit_weights_give_strength_equal_to_degree((n, edges) in common::unit_graph(10)) {
        let g = common::build(n, 2, &common::unit(&edges));
        for x in g.nodes() {
            prop_assert_eq!(g.strength(x), g.degree(x) as f64);
        }
    }
}
