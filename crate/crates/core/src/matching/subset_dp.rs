//! Maximum-weight matching by dynamic programming over vertex subsets.
//!
//! `value[S] = max(value[S - low], max_j w(low, j) + value[S - low - j])`
//! where `low` is the smallest vertex of `S` and `j` ranges over its
//! neighbours inside `S`. Exponential in the vertex count; used for small
//! instances and to tabulate every coalition value of a small game at once.

/// Values of every vertex subset, indexed by bitmask. `n` must be small
/// enough for `2^n` entries to be allocated.
pub(crate) fn value_table(n: usize, edges: &[(usize, usize, i128)]) -> Vec<i128> {
    assert!(n < 32, "subset table over {n} vertices");
    let nbrs = neighbour_lists(n, edges);
    let size = 1usize << n;
    let mut value = vec![0i128; size];
    for s in 1..size {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        let mut best = value[rest];
        for &(j, w) in &nbrs[low] {
            if rest >> j & 1 == 1 {
                let cand = w + value[rest & !(1 << j)];
                if cand > best {
                    best = cand;
                }
            }
        }
        value[s] = best;
    }
    value
}

/// Maximum matching weight over all `n` vertices.
pub(crate) fn max_value(n: usize, edges: &[(usize, usize, i128)]) -> i128 {
    if n == 0 {
        return 0;
    }
    value_table(n, edges)[(1usize << n) - 1]
}

fn neighbour_lists(n: usize, edges: &[(usize, usize, i128)]) -> Vec<Vec<(usize, i128)>> {
    let mut nbrs = vec![Vec::new(); n];
    for &(u, v, w) in edges {
        nbrs[u].push((v, w));
        nbrs[v].push((u, w));
    }
    nbrs
}
