//! The coalition value oracle: exact maximum-weight matchings of induced
//! subgraphs, perfect matchability, and augmenting paths.

mod augmenting;
pub(crate) mod blossom;
pub(crate) mod subset_dp;

use crate::error::{Error, Result};
use crate::graph::{Coalition, WeightedGraph};
use crate::number::Rational;

/// Instances with at most this many vertices are solved by the subset
/// dynamic program instead of the blossom algorithm.
pub const SUBSET_DP_MAX_VERTICES: usize = 10;

/// A set of pairwise vertex-disjoint edges, each stored as `(u, v)` with
/// `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    edges: Vec<(usize, usize)>,
}

impl Matching {
    pub fn new<I: IntoIterator<Item = (usize, usize)>>(edges: I) -> Self {
        let mut edges: Vec<_> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        Matching { edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks that every edge exists in `g` and no two edges share a vertex.
    pub fn validate(&self, g: &WeightedGraph) -> Result<()> {
        let mut used = vec![false; g.vertex_count()];
        for &(u, v) in &self.edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if g.edge_index(u, v).is_none() {
                return Err(Error::InvalidArgument(format!(
                    "matching edge ({u},{v}) is not an edge of the graph"
                )));
            }
            for x in [u, v] {
                if std::mem::replace(&mut used[x], true) {
                    return Err(Error::InvalidArgument(format!(
                        "vertex {x} is covered twice by the matching"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn weight(&self, g: &WeightedGraph) -> Rational {
        self.edges
            .iter()
            .map(|&(u, v)| g.weight(u, v).cloned().unwrap_or_default())
            .sum()
    }

    /// Symmetric difference with the edges of `path` (consecutive pairs).
    pub fn augment(&self, path: &[usize]) -> Matching {
        let mut edges = self.edges.clone();
        for pair in path.windows(2) {
            let e = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            match edges.iter().position(|&x| x == e) {
                Some(pos) => {
                    edges.remove(pos);
                }
                None => edges.push(e),
            }
        }
        Matching::new(edges)
    }

    fn mates(&self, n: usize) -> Vec<usize> {
        let mut mate = vec![usize::MAX; n];
        for &(u, v) in &self.edges {
            mate[u] = v;
            mate[v] = u;
        }
        mate
    }
}

fn scaled_edges(g: &WeightedGraph) -> Vec<(usize, usize, i128)> {
    g.edges()
        .iter()
        .enumerate()
        .map(|(k, e)| (e.u, e.v, g.scaled_weight(k)))
        .collect()
}

/// Maximum matching weight of an edge list, in the caller's integer units.
pub(crate) fn max_value_scaled(n: usize, edges: &[(usize, usize, i128)]) -> i128 {
    if edges.is_empty() {
        return 0;
    }
    if n <= SUBSET_DP_MAX_VERTICES {
        return subset_dp::max_value(n, edges);
    }
    let mate = blossom::solve(n, edges);
    edges
        .iter()
        .filter(|&&(u, v, _)| mate[u] == Some(v))
        .map(|e| e.2)
        .sum()
}

/// Maximum-weight matching of `g` with its exact weight.
///
/// Among all optimal matchings the lexicographically smallest sorted edge
/// list is returned, so the witness is stable across runs and solvers.
pub fn max_weight_matching(g: &WeightedGraph) -> (Matching, Rational) {
    let n = g.vertex_count();
    let edges = scaled_edges(g);
    let best = max_value_scaled(n, &edges);
    // Keep an edge whenever an optimal completion exists on the remaining
    // vertices using only edges that come later in lexicographic order.
    let mut free = vec![true; n];
    let mut target = best;
    let mut chosen = Vec::new();
    for (idx, &(u, v, w)) in edges.iter().enumerate() {
        if target == 0 {
            break;
        }
        if !free[u] || !free[v] {
            continue;
        }
        free[u] = false;
        free[v] = false;
        let rest: Vec<_> = edges[idx + 1..]
            .iter()
            .copied()
            .filter(|&(a, b, _)| free[a] && free[b])
            .collect();
        if w + max_value_on_subset(n, &rest) == target {
            chosen.push((u, v));
            target -= w;
        } else {
            free[u] = true;
            free[v] = true;
        }
    }
    debug_assert_eq!(target, 0);
    (Matching::new(chosen), g.unscale(best))
}

/// Relabels the vertices touched by `edges` densely before solving.
fn max_value_on_subset(n: usize, edges: &[(usize, usize, i128)]) -> i128 {
    let mut relabel = vec![usize::MAX; n];
    let mut next = 0;
    let mut dense = Vec::with_capacity(edges.len());
    for &(u, v, w) in edges {
        for x in [u, v] {
            if relabel[x] == usize::MAX {
                relabel[x] = next;
                next += 1;
            }
        }
        dense.push((relabel[u], relabel[v], w));
    }
    max_value_scaled(next, &dense)
}

/// `v(S)`: the maximum weight of a matching in the subgraph induced by `s`.
pub fn coalition_value(g: &WeightedGraph, s: &Coalition) -> Result<Rational> {
    Ok(g.unscale(coalition_value_scaled(g, s)?))
}

pub(crate) fn coalition_value_scaled(g: &WeightedGraph, s: &Coalition) -> Result<i128> {
    g.check_universe(s)?;
    let edges: Vec<_> = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| s.contains(e.u) && s.contains(e.v))
        .map(|(k, e)| (e.u, e.v, g.scaled_weight(k)))
        .collect();
    Ok(max_value_on_subset(g.vertex_count(), &edges))
}

/// True iff the subgraph induced by `s` has a matching covering all of `s`.
/// The empty coalition counts as perfectly matchable. Weights are ignored.
pub fn is_perfectly_matchable(g: &WeightedGraph, s: &Coalition) -> Result<bool> {
    g.check_universe(s)?;
    let k = s.len();
    if k % 2 == 1 {
        return Ok(false);
    }
    let edges: Vec<_> = g
        .edges()
        .iter()
        .filter(|e| s.contains(e.u) && s.contains(e.v))
        .map(|e| (e.u, e.v, 1i128))
        .collect();
    Ok(max_value_on_subset(g.vertex_count(), &edges) == (k / 2) as i128)
}

/// An alternating path between two exposed vertices, if one exists. The
/// graph is treated as unweighted. The path is oriented so that its first
/// vertex is smaller than its last.
pub fn find_augmenting_path(g: &WeightedGraph, m: &Matching) -> Result<Option<Vec<usize>>> {
    m.validate(g)?;
    let adjacency: Vec<Vec<usize>> = (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().map(|&(w, _)| w).collect())
        .collect();
    Ok(augmenting::find(&adjacency, &m.mates(g.vertex_count())))
}
