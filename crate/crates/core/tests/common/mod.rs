//! Graph generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use matchshap::{Rational, WeightedGraph};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// All vertex pairs of `0..n` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            out.push((u, v));
        }
    }
    out
}

/// Every unweighted graph on `n` labelled vertices.
pub fn all_graphs(n: usize) -> impl Iterator<Item = WeightedGraph> {
    let pairs = pairs(n);
    (0..1u64 << pairs.len()).map(move |mask| {
        let edges: Vec<_> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        WeightedGraph::unweighted(n, &edges).unwrap()
    })
}

pub fn random_unweighted(rng: &mut impl Rng, n: usize, p: f64) -> WeightedGraph {
    let edges: Vec<_> = pairs(n).into_iter().filter(|_| rng.random_bool(p)).collect();
    WeightedGraph::unweighted(n, &edges).unwrap()
}

/// Random graph with rational weights `a/b`, `1 ≤ a ≤ 9`, `b ∈ {1,2,3,4}`.
pub fn random_weighted(rng: &mut impl Rng, n: usize, p: f64) -> WeightedGraph {
    let mut edges = Vec::new();
    for (u, v) in pairs(n) {
        if rng.random_bool(p) {
            edges.push((u, v, q(rng.random_range(1..=9), rng.random_range(1..=4))));
        }
    }
    WeightedGraph::new(n, edges).unwrap()
}

pub fn path(n: usize) -> WeightedGraph {
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    WeightedGraph::unweighted(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> WeightedGraph {
    let edges: Vec<_> = (0..n).map(|v| (v, (v + 1) % n)).collect();
    WeightedGraph::unweighted(n, &edges).unwrap()
}

pub fn complete(n: usize) -> WeightedGraph {
    WeightedGraph::unweighted(n, &pairs(n)).unwrap()
}

pub fn complete_multipartite(parts: &[usize]) -> WeightedGraph {
    let owner: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(p, &size)| std::iter::repeat_n(p, size))
        .collect();
    let edges: Vec<_> = pairs(owner.len())
        .into_iter()
        .filter(|&(u, v)| owner[u] != owner[v])
        .collect();
    WeightedGraph::unweighted(owner.len(), &edges).unwrap()
}

/// Maximum matching weight of the subgraph induced by `mask`, by a direct
/// recursion on the lowest vertex: it is either left unmatched or matched
/// to one of its neighbours.
pub fn matching_value(g: &WeightedGraph, mask: u64, memo: &mut HashMap<u64, Rational>) -> Rational {
    if mask == 0 {
        return q(0, 1);
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let v = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << v);
    let mut best = matching_value(g, rest, memo);
    for &(u, k) in g.neighbors(v) {
        if rest >> u & 1 == 1 {
            let w = &g.edges()[k].weight;
            let candidate = w + matching_value(g, rest & !(1 << u), memo);
            if candidate > best {
                best = candidate;
            }
        }
    }
    memo.insert(mask, best.clone());
    best
}

/// Coalition values of every subset, indexed by bitmask.
pub fn value_table(g: &WeightedGraph) -> Vec<Rational> {
    let mut memo = HashMap::new();
    (0..1u64 << g.vertex_count())
        .map(|mask| matching_value(g, mask, &mut memo))
        .collect()
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::from(1), |acc, k| acc * k)
}

/// Shapley vector from the coalition formula over an independent value
/// table.
pub fn shapley_reference(g: &WeightedGraph) -> Vec<Rational> {
    let n = g.vertex_count();
    let table = value_table(g);
    let total = Rational::from_integer(factorial(n));
    (0..n)
        .map(|i| {
            let mut acc = q(0, 1);
            for mask in 0..1u64 << n {
                if mask >> i & 1 == 1 {
                    continue;
                }
                let s = mask.count_ones() as usize;
                let weight = factorial(s) * factorial(n - s - 1);
                acc += (&table[(mask | 1 << i) as usize] - &table[mask as usize])
                    * Rational::from_integer(weight);
            }
            acc / &total
        })
        .collect()
}

/// Vertices `u`, `v` are interchangeable: same weighted neighbours outside
/// `{u, v}`, and either non-adjacent or adjacent (any weight works for a
/// two-element swap).
pub fn symmetric(g: &WeightedGraph, u: usize, v: usize) -> bool {
    let outside = |a: usize, b: usize| -> Vec<(usize, Rational)> {
        g.neighbors(a)
            .iter()
            .filter(|&&(w, _)| w != b)
            .map(|&(w, k)| (w, g.edges()[k].weight.clone()))
            .collect()
    };
    outside(u, v) == outside(v, u)
}
