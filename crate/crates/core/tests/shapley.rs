mod common;

use common::*;
use matchshap::number::factorial as fact;
use matchshap::shapley::{
    is_pivotal, is_zero_shapley, shapley_auto_with, shapley_brute_force, shapley_by_components,
    shapley_from_pivotal_counts, shapley_permutation_oracle, ComponentMethod, RawShapleyVector,
    ShapleyVector,
};
use matchshap::{Coalition, ExactConfig, MatchingGame, Rational, WeightedGraph};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn check_axioms(g: &WeightedGraph, phi: &ShapleyVector) {
    let game = MatchingGame::new(g.clone());
    assert!(phi.satisfies_efficiency(&game), "{}", g.to_edge_list());
    for i in 0..g.vertex_count() {
        assert!(!phi[i].is_negative());
        if g.degree(i) == 0 {
            assert!(phi[i].is_zero());
        }
        for j in i + 1..g.vertex_count() {
            if symmetric(g, i, j) {
                assert_eq!(phi[i], phi[j], "{i} {j} in {}", g.to_edge_list());
            }
        }
    }
}

#[test]
fn spec_examples() {
    let p3 = path(3);
    assert_eq!(shapley_brute_force(&p3).unwrap().values(), [q(1, 6), q(2, 3), q(1, 6)]);
    let k3 = complete(3);
    assert_eq!(shapley_brute_force(&k3).unwrap().values(), [q(1, 3), q(1, 3), q(1, 3)]);
    let star = WeightedGraph::unweighted(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
    let phi = shapley_permutation_oracle(&star).unwrap();
    assert_eq!(phi.values(), [q(3, 4), q(1, 12), q(1, 12), q(1, 12)]);
    assert_eq!(shapley_brute_force(&star).unwrap(), phi);
}

#[test]
fn axioms_exhaustive_and_random() {
    for n in 1..=5 {
        for g in all_graphs(n) {
            check_axioms(&g, &shapley_brute_force(&g).unwrap());
        }
    }
    let mut r = rng(10);
    for trial in 0..200 {
        let g = random_weighted(&mut r, 2 + trial % 6, 0.5);
        check_axioms(&g, &shapley_brute_force(&g).unwrap());
    }
}

#[test]
fn brute_force_matches_permutations() {
    for n in 1..=6 {
        for g in all_graphs(n) {
            assert_eq!(
                shapley_brute_force(&g).unwrap(),
                shapley_permutation_oracle(&g).unwrap(),
                "{}",
                g.to_edge_list()
            );
        }
    }
    let mut r = rng(11);
    for trial in 0..100 {
        let g = random_weighted(&mut r, 2 + trial % 6, 0.6);
        assert_eq!(shapley_brute_force(&g).unwrap(), shapley_permutation_oracle(&g).unwrap());
    }
}

#[test]
fn brute_force_matches_independent_reference() {
    let mut r = rng(12);
    for trial in 0..60 {
        let g = random_weighted(&mut r, 2 + trial % 8, 0.5);
        assert_eq!(shapley_brute_force(&g).unwrap().values(), shapley_reference(&g));
    }
}

#[test]
fn components_match_whole_graph() {
    let k2_p3 = WeightedGraph::unweighted(5, &[(0, 1), (2, 3), (3, 4)]).unwrap();
    let phi = shapley_by_components(&k2_p3, shapley_brute_force).unwrap();
    assert_eq!(phi.values(), [q(1, 2), q(1, 2), q(1, 6), q(2, 3), q(1, 6)]);
    let two_edges = WeightedGraph::unweighted(4, &[(0, 1), (2, 3)]).unwrap();
    assert_eq!(
        shapley_by_components(&two_edges, shapley_brute_force).unwrap().values(),
        [q(1, 2), q(1, 2), q(1, 2), q(1, 2)]
    );
    let mut r = rng(13);
    for trial in 0..80 {
        let g = if trial % 2 == 0 {
            random_weighted(&mut r, 4 + trial % 6, 0.25)
        } else {
            random_unweighted(&mut r, 4 + trial % 6, 0.25)
        };
        assert_eq!(
            shapley_by_components(&g, shapley_brute_force).unwrap(),
            shapley_brute_force(&g).unwrap()
        );
    }
}

#[test]
fn pivotal_counts_reproduce_shapley() {
    for n in 1..=6 {
        for (idx, g) in all_graphs(n).enumerate() {
            // Every graph for n ≤ 5; a stride through the 32768 six-vertex graphs.
            if n == 6 && idx % 37 != 0 {
                continue;
            }
            let phi = shapley_brute_force(&g).unwrap();
            for i in 0..n {
                let mut eta = vec![BigInt::zero(); n];
                for mask in 0..1u64 << n {
                    if mask >> i & 1 == 1 {
                        continue;
                    }
                    if is_pivotal(&g, i, &Coalition::from_mask(n, mask)).unwrap() {
                        eta[mask.count_ones() as usize] += 1;
                    }
                }
                assert_eq!(shapley_from_pivotal_counts(&eta, n), phi[i]);
            }
        }
    }
}

#[test]
fn raw_values_are_integral_for_unweighted_graphs() {
    let mut r = rng(14);
    for trial in 0..60 {
        let n = 2 + trial % 7;
        let g = random_unweighted(&mut r, n, 0.4);
        let phi = shapley_brute_force(&g).unwrap();
        let raw = RawShapleyVector::brute_force(&g).unwrap();
        assert_eq!(raw, phi.to_raw());
        assert_eq!(raw.to_normalized(), phi);
        assert!(raw.as_integers().is_some());
    }
}

#[test]
fn raw_value_lower_bound() {
    // κ_i ≥ w_max(i) (n-2)! for every non-isolated player.
    let mut r = rng(15);
    for trial in 0..100 {
        let n = 2 + trial % 6;
        let g = random_weighted(&mut r, n, 0.5);
        let raw = RawShapleyVector::brute_force(&g).unwrap();
        for i in 0..n {
            if let Some(w) = g.max_incident_weight(i) {
                assert!(raw[i] >= w * Rational::from_integer(fact(n - 2)));
            }
        }
    }
}

#[test]
fn additivity_over_disjoint_parts() {
    // Two graphs with disjoint supports on one vertex set: the game of the
    // union is the sum of the games, so the values add.
    let mut r = rng(16);
    for _ in 0..30 {
        let a = random_weighted(&mut r, 3, 0.7);
        let b = random_weighted(&mut r, 3, 0.7);
        let union = a.disjoint_union(&b).unwrap();
        let left = a.disjoint_union(&WeightedGraph::empty(3)).unwrap();
        let right = WeightedGraph::empty(3).disjoint_union(&b).unwrap();
        let sum: Vec<Rational> = shapley_brute_force(&left)
            .unwrap()
            .values()
            .iter()
            .zip(shapley_brute_force(&right).unwrap().values())
            .map(|(x, y)| x + y)
            .collect();
        assert_eq!(shapley_brute_force(&union).unwrap().values(), sum);
    }
}

#[test]
fn zero_value_iff_isolated() {
    let g = WeightedGraph::unweighted(4, &[(0, 1)]).unwrap();
    assert!(!is_zero_shapley(&g, 0).unwrap());
    assert!(is_zero_shapley(&g, 3).unwrap());
    assert!(is_zero_shapley(&WeightedGraph::empty(2), 1).unwrap());
    assert!(is_zero_shapley(&g, 4).is_err());
}

#[test]
fn dispatcher_matches_brute_force() {
    let config = ExactConfig::default();
    let mut r = rng(17);
    for trial in 0..80 {
        let n = 3 + trial % 8;
        let g = match trial % 3 {
            0 => random_weighted(&mut r, n, 0.3),
            1 => random_unweighted(&mut r, n, 0.2),
            _ => random_unweighted(&mut r, n, 0.6),
        };
        let result = shapley_auto_with(&g, &config).unwrap();
        assert_eq!(result.values, shapley_brute_force(&g).unwrap(), "{}", g.to_edge_list());
        for (block, method) in result.components(&g) {
            if block.len() == 1 {
                assert_eq!(method, ComponentMethod::Zero);
            }
        }
    }
}

#[test]
fn dispatcher_handles_large_structured_graphs() {
    // 40 vertices: far beyond enumeration, but paths, cycles and complete
    // bipartite blocks all have polynomial methods.
    let mut edges: Vec<(usize, usize)> = (0..14).map(|v| (v, v + 1)).collect();
    edges.extend((15..25).map(|v| (v, if v == 24 { 15 } else { v + 1 })));
    for a in 25..29 {
        for b in 29..40 {
            edges.push((a, b));
        }
    }
    let g = WeightedGraph::unweighted(40, &edges).unwrap();
    let result = shapley_auto_with(&g, &ExactConfig::default()).unwrap();
    let game_total: Rational = result.values.total();
    assert_eq!(game_total, q(7 + 5 + 4, 1));
    assert_eq!(result.methods[0], ComponentMethod::Degree2);
    assert!(matches!(result.methods[30], ComponentMethod::Modular(_)));
    assert_eq!(result.values[15], q(1, 2));
}
