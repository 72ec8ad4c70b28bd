//! Closed forms for unweighted graphs of maximum degree two: disjoint unions
//! of paths and cycles.
//!
//! On a path `1 - 2 - ... - n`, adding player `i` to a coalition `S` only
//! interacts with the maximal runs of `S` ending at `i - 1` (length `L`) and
//! starting at `i + 1` (length `R`). A run of odd length has an exposed end
//! vertex, so:
//!
//! * `L = R = 0`: `i` is isolated, never pivotal;
//! * exactly one run present: pivotal iff that run has odd length;
//! * both present: pivotal unless both runs have even length.
//!
//! For fixed `(L, R)` the vertices just outside the runs must be absent and
//! every other vertex is free, which gives a binomial count.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::number::{Binomials, Rational};
use crate::shapley::{shapley_from_pivotal_counts, ShapleyVector};

/// Size-`s` pivotal coalition counts for player `i` on the path `1..n`,
/// split by how `i` meets the coalition.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PathPivots {
    /// `i` extends a run that starts at `i + 1`; no run ends at `i - 1`.
    pub left: BigInt,
    /// `i` extends a run that ends at `i - 1`; no run starts at `i + 1`.
    pub right: BigInt,
    /// `i` joins two runs.
    pub connect: BigInt,
}

impl PathPivots {
    pub fn total(&self) -> BigInt {
        &self.left + &self.right + &self.connect
    }
}

fn check_path_args(n: usize, i: usize, s: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "path needs at least two vertices, got {n}"
        )));
    }
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!(
            "vertex {i} outside path 1..{n}"
        )));
    }
    if s == 0 || s >= n {
        return Err(Error::InvalidArgument(format!(
            "coalition size {s} outside 1..{}",
            n - 1
        )));
    }
    Ok(())
}

fn pivots_with(binomials: &Binomials, n: usize, i: usize, s: usize) -> PathPivots {
    let mut out = PathPivots::default();
    let (n, i, s) = (n as i64, i as i64, s as i64);
    for left_run in 0..i {
        for right_run in 0..=(n - i) {
            if left_run + right_run > s {
                break;
            }
            let slot = match (left_run, right_run) {
                (0, 0) => continue,
                (0, r) if r % 2 == 1 => &mut out.left,
                (l, 0) if l % 2 == 1 => &mut out.right,
                (l, r) if l > 0 && r > 0 && (l % 2 == 1 || r % 2 == 1) => &mut out.connect,
                _ => continue,
            };
            let blockers = i64::from(i - left_run > 1) + i64::from(i + right_run < n);
            let free = n - 1 - left_run - right_run - blockers;
            let needed = s - left_run - right_run;
            *slot += binomials.get(free, needed);
        }
    }
    out
}

/// Pivotal counts for player `i` (1-based) among size-`s` coalitions of the
/// unweighted path on `n` vertices, split into the three cases.
pub fn eta_path_parts(n: usize, i: usize, s: usize) -> Result<PathPivots> {
    check_path_args(n, i, s)?;
    Ok(pivots_with(&Binomials::up_to(n), n, i, s))
}

/// Number of size-`s` coalitions for which player `i` (1-based) is pivotal
/// on the unweighted path `1 - ... - n`.
pub fn eta_path(n: usize, i: usize, s: usize) -> Result<BigInt> {
    Ok(eta_path_parts(n, i, s)?.total())
}

/// Shapley value of player `i` (1-based) on the unweighted path with `n`
/// vertices.
pub fn shapley_path(n: usize, i: usize) -> Result<Rational> {
    if i == 0 || i > n {
        return Err(Error::InvalidArgument(format!(
            "vertex {i} outside path 1..{n}"
        )));
    }
    if n == 1 {
        return Ok(Rational::zero());
    }
    let binomials = Binomials::up_to(n);
    let mut eta = vec![BigInt::zero(); n];
    for (s, slot) in eta.iter_mut().enumerate().skip(1) {
        *slot = pivots_with(&binomials, n, i, s).total();
    }
    Ok(shapley_from_pivotal_counts(&eta, n))
}

/// Uniform Shapley value `⌊n/2⌋ / n` of a player on the unweighted cycle of
/// length `n`.
pub fn shapley_cycle(n: usize) -> Result<Rational> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "cycle needs at least three vertices, got {n}"
        )));
    }
    Ok(Rational::new(BigInt::from(n / 2), BigInt::from(n)))
}

/// Shapley vector of an unweighted graph with maximum degree two.
pub fn shapley_degree_two(g: &WeightedGraph) -> Result<ShapleyVector> {
    if !g.is_unweighted() {
        return Err(Error::NotApplicable {
            method: "degree2",
            reason: "graph is weighted".into(),
        });
    }
    if let Some(v) = (0..g.vertex_count()).find(|&v| g.degree(v) > 2) {
        return Err(Error::NotApplicable {
            method: "degree2",
            reason: format!("vertex {v} has degree {}", g.degree(v)),
        });
    }
    let mut values = vec![Rational::zero(); g.vertex_count()];
    let mut path_values: HashMap<usize, Vec<Rational>> = HashMap::new();
    for block in g.connected_components() {
        let k = block.len();
        if k == 1 {
            continue;
        }
        let edges_inside = block.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        if edges_inside == k {
            let phi = shapley_cycle(k)?;
            for &v in &block {
                values[v] = phi.clone();
            }
            continue;
        }
        let order = walk_path(g, &block);
        if let std::collections::hash_map::Entry::Vacant(e) = path_values.entry(k) {
            let row = (1..=k).map(|pos| shapley_path(k, pos)).collect::<Result<_>>()?;
            e.insert(row);
        }
        let row = &path_values[&k];
        for (pos, &v) in order.iter().enumerate() {
            values[v] = row[pos].clone();
        }
    }
    Ok(ShapleyVector::new(values))
}

/// Vertices of a path component in order, starting from its smaller end.
fn walk_path(g: &WeightedGraph, block: &[usize]) -> Vec<usize> {
    let start = *block
        .iter()
        .find(|&&v| g.degree(v) == 1)
        .expect("path component has an end vertex");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&(next, _)) = g.neighbors(cur).iter().find(|&&(w, _)| w != prev) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}
