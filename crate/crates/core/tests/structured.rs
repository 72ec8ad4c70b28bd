mod common;

use common::*;
use matchshap::shapley::shapley_brute_force;
use matchshap::structured::{
    eta_path, find_modular_decomposition, shapley_by_player_types, shapley_cycle,
    shapley_degree_two, shapley_modular, shapley_path, ModuleKind, TypePartition,
};
use matchshap::{Coalition, MatchingGame, Rational, WeightedGraph};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

#[test]
fn eta_matches_enumeration_up_to_twelve() {
    for n in 2..=12 {
        let table = value_table(&path(n));
        for i in 1..=n {
            let player = i - 1;
            let mut counts = vec![0u64; n];
            for mask in 0..1u64 << n {
                if mask >> player & 1 == 0
                    && table[(mask | 1 << player) as usize] != table[mask as usize]
                {
                    counts[mask.count_ones() as usize] += 1;
                }
            }
            for (s, &count) in counts.iter().enumerate().skip(1) {
                assert_eq!(eta_path(n, i, s).unwrap(), BigInt::from(count), "n={n} i={i} s={s}");
            }
        }
    }
}

#[test]
fn closed_forms_match_brute_force() {
    for n in 1..=10 {
        let phi = shapley_brute_force(&path(n)).unwrap();
        for i in 1..=n {
            assert_eq!(shapley_path(n, i).unwrap(), phi[i - 1]);
        }
        assert_eq!(shapley_degree_two(&path(n)).unwrap(), phi);
        if n >= 3 {
            let phi = shapley_brute_force(&cycle(n)).unwrap();
            assert!(phi.values().iter().all(|v| *v == shapley_cycle(n).unwrap()));
            assert_eq!(shapley_degree_two(&cycle(n)).unwrap(), phi);
        }
    }
    assert_eq!(shapley_degree_two(&path(3)).unwrap().values(), [q(1, 6), q(2, 3), q(1, 6)]);
    assert_eq!(
        shapley_degree_two(&path(4)).unwrap().values(),
        [q(5, 12), q(7, 12), q(7, 12), q(5, 12)]
    );
}

#[test]
fn random_degree_two_unions() {
    let mut r = rng(20);
    for _ in 0..60 {
        // Shuffle labels of a union of paths and cycles with ≤ 10 vertices.
        let mut edges = Vec::new();
        let mut next = 0;
        while next < 10 {
            let len = r.random_range(1..=(10 - next).min(5));
            let is_cycle = len >= 3 && r.random_bool(0.5);
            for k in 1..len {
                edges.push((next + k - 1, next + k));
            }
            if is_cycle {
                edges.push((next, next + len - 1));
            }
            next += len;
        }
        let mut labels: Vec<usize> = (0..10).collect();
        labels.shuffle(&mut r);
        let edges: Vec<_> = edges.iter().map(|&(u, v)| (labels[u], labels[v])).collect();
        let g = WeightedGraph::unweighted(10, &edges).unwrap();
        assert_eq!(shapley_degree_two(&g).unwrap(), shapley_brute_force(&g).unwrap());
    }
}

/// Partitions of `n` into at most `k` positive parts, nonincreasing.
fn part_lists(n: usize, k: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    if k == 0 {
        return vec![];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in part_lists(n - first, k - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[test]
fn complete_multipartite_graphs() {
    for n in 2..=9 {
        for parts in part_lists(n, 3, n) {
            let g = complete_multipartite(&parts);
            let p = find_modular_decomposition(&g, ModuleKind::Coclique).unwrap();
            assert!(p.len() <= 3);
            assert_eq!(shapley_modular(&g, &p).unwrap(), shapley_brute_force(&g).unwrap(), "{parts:?}");
        }
    }
    let k23 = complete_multipartite(&[2, 3]);
    let p = find_modular_decomposition(&k23, ModuleKind::Coclique).unwrap();
    assert_eq!(
        shapley_modular(&k23, &p).unwrap().values(),
        [q(13, 20), q(13, 20), q(7, 30), q(7, 30), q(7, 30)]
    );
}

#[test]
fn clique_decompositions() {
    // Complements of complete multipartite graphs: disjoint cliques.
    for parts in [vec![3, 2], vec![2, 2, 2], vec![4, 1, 1], vec![5]] {
        let g = complete_multipartite(&parts).complement().unwrap();
        let p = find_modular_decomposition(&g, ModuleKind::Clique).unwrap();
        assert_eq!(p.len(), parts.len());
        assert_eq!(shapley_modular(&g, &p).unwrap(), shapley_brute_force(&g).unwrap());
    }
}

#[test]
fn player_type_program_with_custom_oracle() {
    // Any symmetric game works; here the matching game of K_{3,3} is given
    // through its profile values directly.
    let g = complete_multipartite(&[3, 3]);
    let partition = TypePartition::new(ModuleKind::Coclique, vec![vec![0, 1, 2], vec![3, 4, 5]]);
    let phi = shapley_by_player_types(
        |p| Ok(Rational::from_integer(p.counts[0].min(p.counts[1]).into())),
        &partition,
    )
    .unwrap();
    assert_eq!(phi, shapley_brute_force(&g).unwrap());
}

/// All set partitions of `0..n`.
fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = vec![vec![]];
    for v in 0..n {
        let mut next = Vec::new();
        for p in out {
            for b in 0..p.len() {
                let mut q: Vec<Vec<usize>> = p.clone();
                q[b].push(v);
                next.push(q);
            }
            let mut q = p.clone();
            q.push(vec![v]);
            next.push(q);
        }
        out = next;
    }
    out
}

/// Module check written from the definition.
fn is_valid(g: &WeightedGraph, blocks: &[Vec<usize>], kind: ModuleKind) -> bool {
    let n = g.vertex_count();
    let mut owner = vec![0; n];
    for (b, block) in blocks.iter().enumerate() {
        for &v in block {
            owner[v] = b;
        }
    }
    for block in blocks {
        for (a, &u) in block.iter().enumerate() {
            for &v in &block[a + 1..] {
                let adjacent = g.weight(u, v).is_some();
                match kind {
                    ModuleKind::Coclique if adjacent => return false,
                    ModuleKind::Clique if !adjacent => return false,
                    _ => {}
                }
                for w in (0..n).filter(|&w| owner[w] != owner[u]) {
                    if g.weight(u, w) != g.weight(v, w) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[test]
fn decompositions_are_minimum() {
    let mut r = rng(21);
    let partitions: Vec<_> = (0..=7).map(set_partitions).collect();
    let mut graphs = vec![
        complete_multipartite(&[2, 2, 3]),
        complete_multipartite(&[1, 6]),
        complete(7),
        path(7),
        cycle(6),
    ];
    for trial in 0..40 {
        graphs.push(random_unweighted(&mut r, 3 + trial % 5, 0.5));
    }
    for g in &graphs {
        let n = g.vertex_count();
        for kind in [ModuleKind::Coclique, ModuleKind::Clique] {
            let found = find_modular_decomposition(g, kind).unwrap();
            found.validate(g).unwrap();
            assert!(is_valid(g, found.modules(), kind));
            let best = partitions[n]
                .iter()
                .filter(|p| is_valid(g, p, kind))
                .map(Vec::len)
                .min()
                .unwrap();
            assert_eq!(found.len(), best, "{kind:?} {}", g.to_edge_list());
        }
    }
    let k5 = complete(5);
    assert_eq!(find_modular_decomposition(&k5, ModuleKind::Clique).unwrap().len(), 1);
    assert_eq!(find_modular_decomposition(&path(4), ModuleKind::Coclique).unwrap().len(), 4);
}

#[test]
fn structured_results_satisfy_axioms() {
    let mut r = rng(22);
    for _ in 0..30 {
        let parts: Vec<usize> = (0..r.random_range(1..=3)).map(|_| r.random_range(1..=4)).collect();
        let g = complete_multipartite(&parts);
        let p = find_modular_decomposition(&g, ModuleKind::Coclique).unwrap();
        let phi = shapley_modular(&g, &p).unwrap();
        let game = MatchingGame::new(g.clone());
        assert!(phi.satisfies_efficiency(&game));
        for module in p.modules() {
            assert!(module.iter().all(|&v| phi[v] == phi[module[0]]));
        }
    }
    let g = WeightedGraph::unweighted(9, &[(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
    let phi = shapley_degree_two(&g).unwrap();
    assert!(phi.satisfies_efficiency(&MatchingGame::new(g.clone())));
    assert_eq!(phi.total(), MatchingGame::new(g).value(&Coalition::full(9)).unwrap());
}
