mod common;

use std::collections::HashMap;

use common::*;
use matchshap::{
    coalition_value, find_augmenting_path, is_perfectly_matchable, max_weight_matching, Coalition,
    Matching, Rational, WeightedGraph,
};

/// Every matching of `g`, as sorted edge lists.
fn all_matchings(g: &WeightedGraph) -> Vec<Vec<(usize, usize)>> {
    fn go(
        g: &WeightedGraph,
        k: usize,
        used: &mut Vec<bool>,
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if k == g.edges().len() {
            out.push(current.clone());
            return;
        }
        go(g, k + 1, used, current, out);
        let e = &g.edges()[k];
        if !used[e.u] && !used[e.v] {
            used[e.u] = true;
            used[e.v] = true;
            current.push((e.u, e.v));
            go(g, k + 1, used, current, out);
            current.pop();
            used[e.u] = false;
            used[e.v] = false;
        }
    }
    let mut out = Vec::new();
    go(g, 0, &mut vec![false; g.vertex_count()], &mut Vec::new(), &mut out);
    out
}

fn weight_of(g: &WeightedGraph, edges: &[(usize, usize)]) -> Rational {
    edges.iter().map(|&(u, v)| g.weight(u, v).unwrap().clone()).sum()
}

fn check_against_enumeration(g: &WeightedGraph) {
    let (m, w) = max_weight_matching(g);
    m.validate(g).unwrap();
    assert_eq!(m.weight(g), w);
    let matchings = all_matchings(g);
    let best = matchings.iter().map(|e| weight_of(g, e)).max().unwrap();
    assert_eq!(w, best, "{}", g.to_edge_list());
    let smallest = matchings
        .iter()
        .filter(|e| weight_of(g, e) == best)
        .min()
        .unwrap();
    assert_eq!(m.edges(), smallest.as_slice(), "{}", g.to_edge_list());
}

#[test]
fn spec_examples() {
    let edge = WeightedGraph::new(2, [(0, 1, q(5, 1))]).unwrap();
    assert_eq!(max_weight_matching(&edge).1, q(5, 1));
    let triangle = WeightedGraph::new(3, [(0, 1, q(3, 1)), (1, 2, q(1, 1)), (0, 2, q(1, 1))]).unwrap();
    assert_eq!(max_weight_matching(&triangle).1, q(3, 1));
    let p = WeightedGraph::new(4, [(0, 1, q(5, 1)), (1, 2, q(3, 1)), (2, 3, q(4, 1))]).unwrap();
    let (m, w) = max_weight_matching(&p);
    assert_eq!(w, q(9, 1));
    assert_eq!(m.edges(), [(0, 1), (2, 3)]);
    assert_eq!(max_weight_matching(&WeightedGraph::empty(3)).1, q(0, 1));

    assert_eq!(coalition_value(&path(4), &Coalition::full(4)).unwrap(), q(2, 1));
    assert_eq!(coalition_value(&cycle(5), &Coalition::full(5)).unwrap(), q(2, 1));
    assert_eq!(coalition_value(&cycle(5), &Coalition::empty(5)).unwrap(), q(0, 1));
}

#[test]
fn exhaustive_unweighted_up_to_six() {
    for n in 0..=6 {
        for g in all_graphs(n) {
            check_against_enumeration(&g);
        }
    }
}

#[test]
fn random_weighted_up_to_eight() {
    let mut r = rng(1);
    for trial in 0..300 {
        let n = 2 + trial % 7;
        let g = random_weighted(&mut r, n, 0.5);
        check_against_enumeration(&g);
    }
}

#[test]
fn larger_graphs_against_recursive_oracle() {
    // Above the subset-DP threshold the blossom solver is used.
    let mut r = rng(2);
    for trial in 0..60 {
        let n = 11 + trial % 6;
        let g = if trial % 2 == 0 {
            random_weighted(&mut r, n, 0.35)
        } else {
            random_unweighted(&mut r, n, 0.3)
        };
        let full = (1u64 << n) - 1;
        let expected = matching_value(&g, full, &mut HashMap::new());
        let (m, w) = max_weight_matching(&g);
        m.validate(&g).unwrap();
        assert_eq!(w, expected, "{}", g.to_edge_list());
    }
}

#[test]
fn berge_certificate_and_cardinality() {
    let mut r = rng(3);
    for trial in 0..200 {
        let g = random_unweighted(&mut r, 3 + trial % 12, 0.3);
        let (m, w) = max_weight_matching(&g);
        assert!(w.is_integer());
        assert_eq!(w, Rational::from_integer((m.len() as i64).into()));
        assert_eq!(find_augmenting_path(&g, &m).unwrap(), None);
        // Removing one edge leaves a matching that can be augmented back.
        if let Some(&(u, v)) = m.edges().first() {
            let smaller = Matching::new(m.edges().iter().copied().filter(|&e| e != (u, v)));
            let p = find_augmenting_path(&g, &smaller).unwrap().expect("augmenting path");
            let bigger = smaller.augment(&p);
            bigger.validate(&g).unwrap();
            assert_eq!(bigger.len(), m.len());
        }
    }
}

#[test]
fn augmenting_path_examples() {
    let p3 = path(3);
    let p = find_augmenting_path(&p3, &Matching::new([])).unwrap().unwrap();
    assert_eq!(p.len(), 2);
    assert_eq!(find_augmenting_path(&p3, &Matching::new([(0, 1)])).unwrap(), None);
    let p4 = path(4);
    assert_eq!(
        find_augmenting_path(&p4, &Matching::new([(1, 2)])).unwrap(),
        Some(vec![0, 1, 2, 3])
    );
}

#[test]
fn monotone_in_the_coalition() {
    let mut r = rng(4);
    for _ in 0..40 {
        let g = random_weighted(&mut r, 7, 0.5);
        let values: Vec<Rational> = (0..1u64 << 7)
            .map(|mask| coalition_value(&g, &Coalition::from_mask(7, mask)).unwrap())
            .collect();
        for mask in 0..1usize << 7 {
            for v in 0..7 {
                assert!(values[mask] <= values[mask | 1 << v]);
            }
        }
    }
}

#[test]
fn perfect_matchability() {
    let p4 = path(4);
    assert!(is_perfectly_matchable(&p4, &Coalition::empty(4)).unwrap());
    assert!(is_perfectly_matchable(&p4, &Coalition::full(4)).unwrap());
    assert!(!is_perfectly_matchable(&path(3), &Coalition::from_members(3, [0, 2])).unwrap());
    assert!(is_perfectly_matchable(&p4, &Coalition::full(3)).is_err());
}
