//! Augmenting paths for cardinality matchings (Edmonds' search with blossom
//! contraction). A matching is maximum iff no augmenting path exists.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// Searches for an alternating path between two exposed vertices. `mate` is
/// a valid matching of the graph given by `adjacency`.
pub(crate) fn find(adjacency: &[Vec<usize>], mate: &[usize]) -> Option<Vec<usize>> {
    let n = adjacency.len();
    let mut search = Search {
        adjacency,
        mate,
        parent: vec![NONE; n],
        base: (0..n).collect(),
        used: vec![false; n],
        in_blossom: vec![false; n],
        queue: VecDeque::new(),
    };
    (0..n)
        .filter(|&root| mate[root] == NONE)
        .find_map(|root| search.augment_from(root))
}

struct Search<'a> {
    adjacency: &'a [Vec<usize>],
    mate: &'a [usize],
    parent: Vec<usize>,
    base: Vec<usize>,
    used: Vec<bool>,
    in_blossom: Vec<bool>,
    queue: VecDeque<usize>,
}

impl Search<'_> {
    fn augment_from(&mut self, root: usize) -> Option<Vec<usize>> {
        let n = self.adjacency.len();
        self.parent.iter_mut().for_each(|p| *p = NONE);
        self.used.iter_mut().for_each(|u| *u = false);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.used[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for &to in &self.adjacency[v] {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // Odd cycle: contract it onto its base.
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|b| *b = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.used[i] {
                                self.used[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(self.trace(root, to));
                    }
                    let next = self.mate[to];
                    self.used[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn lca(&self, mut a: usize, mut b: usize) -> usize {
        let mut seen = vec![false; self.adjacency.len()];
        loop {
            a = self.base[a];
            seen[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if seen[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    fn trace(&self, root: usize, end: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut cur = end;
        loop {
            path.push(cur);
            let prev = self.parent[cur];
            path.push(prev);
            if prev == root {
                break;
            }
            cur = self.mate[prev];
        }
        if path[0] > path[path.len() - 1] {
            path.reverse();
        }
        path
    }
}
