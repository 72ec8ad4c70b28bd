mod common;

use common::q;
use matchshap::shapley::shapley_brute_force;
use matchshap::{Coalition, MatchingGame, Rational, WeightedGraph};
use proptest::prelude::*;

fn unweighted_graph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = common::pairs(n);
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let edges: Vec<_> = pairs
                .iter()
                .zip(keep)
                .filter(|(_, k)| *k)
                .map(|(&e, _)| e)
                .collect();
            WeightedGraph::unweighted(n, &edges).unwrap()
        })
    })
}

fn weighted_graph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = common::pairs(n);
        proptest::collection::vec(proptest::option::of((1i64..50, 1i64..8)), pairs.len())
            .prop_map(move |weights| {
                let edges: Vec<_> = pairs
                    .iter()
                    .zip(weights)
                    .filter_map(|(&(u, v), w)| w.map(|(a, b)| (u, v, q(a, b))))
                    .collect();
                WeightedGraph::new(n, edges).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(g in unweighted_graph(12)) {
        prop_assert_eq!(g.complement().unwrap().complement().unwrap(), g);
    }

    #[test]
    fn edge_list_round_trips(g in weighted_graph(10)) {
        let text = g.to_edge_list();
        prop_assert_eq!(WeightedGraph::parse(text.as_bytes()).unwrap(), g);
    }

    #[test]
    fn full_induced_subgraph_is_identity(g in weighted_graph(10)) {
        let n = g.vertex_count();
        let (sub, map) = g.induced_subgraph(&Coalition::full(n)).unwrap();
        prop_assert_eq!(map, (0..n).collect::<Vec<_>>());
        prop_assert_eq!(sub, g);
    }

    #[test]
    fn components_partition_and_hold_every_edge(g in unweighted_graph(12)) {
        let blocks = g.connected_components();
        let mut owner = vec![usize::MAX; g.vertex_count()];
        for (b, block) in blocks.iter().enumerate() {
            for &v in block {
                prop_assert_eq!(owner[v], usize::MAX);
                owner[v] = b;
            }
        }
        prop_assert!(owner.iter().all(|&o| o != usize::MAX));
        for e in g.edges() {
            prop_assert_eq!(owner[e.u], owner[e.v]);
        }
    }

    #[test]
    fn shapley_is_efficient(g in weighted_graph(7)) {
        let phi = shapley_brute_force(&g).unwrap();
        let game = MatchingGame::new(g.clone());
        prop_assert!(phi.satisfies_efficiency(&game));
        let total: Rational = phi.values().iter().sum();
        prop_assert_eq!(total, game.grand_value());
    }
}
