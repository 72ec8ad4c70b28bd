//! Weighted undirected graphs, coalitions, and the structural queries the
//! game machinery needs.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::number::{parse_rational, Rational};

/// Scaled weights and their sums must stay below this many bits so that
/// matching values fit comfortably in `i128` (the blossom solver doubles them).
const SCALED_BITS: u64 = 96;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Rational,
}

/// Simple undirected graph with positive rational edge weights.
///
/// Edges are stored with `u < v`, sorted lexicographically. Alongside the
/// rational weights the graph keeps an integer copy scaled by the common
/// denominator, which is what the matching solvers operate on.
#[derive(Clone)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(usize, usize)>>,
    scale: BigInt,
    scaled: Vec<i128>,
}

impl WeightedGraph {
    pub fn new<I>(vertex_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut list = Vec::new();
        for (a, b, weight) in edges {
            for x in [a, b] {
                if x >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        vertex_count,
                    });
                }
            }
            if a == b {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {a}")));
            }
            if !weight.is_positive() {
                return Err(Error::InvalidArgument(format!(
                    "edge ({a},{b}) has nonpositive weight {weight}"
                )));
            }
            list.push(Edge {
                u: a.min(b),
                v: a.max(b),
                weight,
            });
        }
        list.sort_by_key(|x| (x.u, x.v));
        if let Some(w) = list.windows(2).find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v)) {
            return Err(Error::InvalidArgument(format!(
                "duplicate edge ({},{})",
                w[0].u, w[0].v
            )));
        }
        Self::from_sorted(vertex_count, list)
    }

    /// Unweighted graph (all weights 1).
    pub fn unweighted(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(
            vertex_count,
            edges.iter().map(|&(u, v)| (u, v, Rational::one())),
        )
    }

    pub fn empty(vertex_count: usize) -> Self {
        Self::from_sorted(vertex_count, Vec::new()).expect("empty graph is valid")
    }

    fn from_sorted(vertex_count: usize, edges: Vec<Edge>) -> Result<Self> {
        let scale = edges
            .iter()
            .fold(BigInt::one(), |acc, e| acc.lcm(e.weight.denom()));
        let mut scaled = Vec::with_capacity(edges.len());
        let mut total = BigInt::zero();
        for e in &edges {
            let s = e.weight.numer() * (&scale / e.weight.denom());
            total += &s;
            scaled.push(s);
        }
        if total.bits() > SCALED_BITS {
            return Err(Error::WeightRange);
        }
        let scaled = scaled
            .into_iter()
            .map(|s| s.to_i128().expect("checked bit width"))
            .collect();
        let mut adjacency = vec![Vec::new(); vertex_count];
        for (k, e) in edges.iter().enumerate() {
            adjacency[e.u].push((e.v, k));
            adjacency[e.v].push((e.u, k));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(WeightedGraph {
            vertex_count,
            edges,
            adjacency,
            scale,
            scaled,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `(neighbor, edge index)` pairs in increasing neighbor order.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.adjacency
            .get(u)?
            .binary_search_by_key(&v, |&(w, _)| w)
            .ok()
            .map(|pos| self.adjacency[u][pos].1)
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<&Rational> {
        self.edge_index(u, v).map(|k| &self.edges[k].weight)
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_one())
    }

    /// Common denominator of all weights; `scaled_weight(k) / scale()` is the
    /// weight of edge `k`.
    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    pub fn scaled_weight(&self, edge: usize) -> i128 {
        self.scaled[edge]
    }

    /// Converts a value expressed in scaled units back to a rational.
    pub fn unscale(&self, value: i128) -> Rational {
        Rational::new(BigInt::from(value), self.scale.clone())
    }

    /// Largest weight on an edge incident to `v`, if any.
    pub fn max_incident_weight(&self, v: usize) -> Option<&Rational> {
        self.adjacency[v]
            .iter()
            .map(|&(_, k)| &self.edges[k].weight)
            .max()
    }

    /// Subgraph induced by `s`. Vertex `k` of the result is the `k`-th
    /// smallest member of `s`; the returned vector maps new ids to old ones.
    pub fn induced_subgraph(&self, s: &Coalition) -> Result<(WeightedGraph, Vec<usize>)> {
        self.check_universe(s)?;
        let members: Vec<usize> = s.iter().collect();
        let mut relabel = vec![usize::MAX; self.vertex_count];
        for (new, &old) in members.iter().enumerate() {
            relabel[old] = new;
        }
        let edges = self
            .edges
            .iter()
            .filter(|e| s.contains(e.u) && s.contains(e.v))
            .map(|e| Edge {
                u: relabel[e.u],
                v: relabel[e.v],
                weight: e.weight.clone(),
            })
            .collect();
        // Relabeling is order preserving, so the edge list stays sorted.
        let graph = Self::from_sorted(members.len(), edges)?;
        Ok((graph, members))
    }

    /// Maximal connected vertex sets, ordered by smallest member; each block
    /// is sorted.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.vertex_count];
        let mut blocks = Vec::new();
        for start in 0..self.vertex_count {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut block = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adjacency[x] {
                    if !seen[y] {
                        seen[y] = true;
                        block.push(y);
                        queue.push_back(y);
                    }
                }
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }

    pub fn complement(&self) -> Result<WeightedGraph> {
        if !self.is_unweighted() {
            return Err(Error::WeightedInput);
        }
        let n = self.vertex_count;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if self.edge_index(u, v).is_none() {
                    edges.push(Edge {
                        u,
                        v,
                        weight: Rational::one(),
                    });
                }
            }
        }
        Self::from_sorted(n, edges)
    }

    /// Disjoint union; vertices of `other` are shifted by `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &WeightedGraph) -> Result<WeightedGraph> {
        let shift = self.vertex_count;
        let edges = self
            .edges
            .iter()
            .map(|e| (e.u, e.v, e.weight.clone()))
            .chain(
                other
                    .edges
                    .iter()
                    .map(|e| (e.u + shift, e.v + shift, e.weight.clone())),
            );
        Self::new(shift + other.vertex_count, edges)
    }

    pub(crate) fn check_universe(&self, s: &Coalition) -> Result<()> {
        if s.universe_size() != self.vertex_count {
            return Err(Error::UniverseMismatch {
                coalition: s.universe_size(),
                graph: self.vertex_count,
            });
        }
        Ok(())
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        Ok(())
    }

    /// Parses the line-oriented edge-list format:
    ///
    /// ```text
    /// # comment
    /// p <n> <m> [weighted|unweighted]
    /// e <u> <v> [<w>]
    /// ```
    pub fn parse(text: &[u8]) -> Result<Self> {
        let text = std::str::from_utf8(text).map_err(|e| Error::Parse {
            line: 0,
            message: format!("input is not valid UTF-8: {e}"),
        })?;
        let err = |line: usize, message: String| Error::Parse { line, message };

        let mut header: Option<(usize, usize, bool)> = None;
        let mut edges: Vec<(usize, usize, Rational, usize)> = Vec::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            match tokens.next() {
                Some("p") => {
                    if header.is_some() {
                        return Err(err(line_no, "duplicate header line".into()));
                    }
                    let n = parse_count(tokens.next(), line_no, "vertex count")?;
                    let m = parse_count(tokens.next(), line_no, "edge count")?;
                    let weighted = match tokens.next() {
                        None | Some("unweighted") => false,
                        Some("weighted") => true,
                        Some(other) => {
                            return Err(err(line_no, format!("unknown graph kind `{other}`")))
                        }
                    };
                    if let Some(extra) = tokens.next() {
                        return Err(err(line_no, format!("unexpected token `{extra}`")));
                    }
                    header = Some((n, m, weighted));
                }
                Some("e") => {
                    let (n, m, weighted) =
                        header.ok_or_else(|| err(line_no, "edge line before header".into()))?;
                    if edges.len() == m {
                        return Err(err(line_no, format!("more than {m} edge lines")));
                    }
                    let u = parse_count(tokens.next(), line_no, "endpoint")?;
                    let v = parse_count(tokens.next(), line_no, "endpoint")?;
                    for x in [u, v] {
                        if x >= n {
                            return Err(err(
                                line_no,
                                format!("vertex {x} out of range (n = {n})"),
                            ));
                        }
                    }
                    if u == v {
                        return Err(err(line_no, format!("self-loop at vertex {u}")));
                    }
                    let weight = match (weighted, tokens.next()) {
                        (true, Some(tok)) => parse_rational(tok)
                            .ok_or_else(|| err(line_no, format!("malformed weight `{tok}`")))?,
                        (true, None) => {
                            return Err(err(line_no, "missing weight in weighted graph".into()))
                        }
                        (false, None) => Rational::one(),
                        (false, Some(tok)) => {
                            return Err(err(
                                line_no,
                                format!("weight `{tok}` given for an unweighted graph"),
                            ))
                        }
                    };
                    if let Some(extra) = tokens.next() {
                        return Err(err(line_no, format!("unexpected token `{extra}`")));
                    }
                    if !weight.is_positive() {
                        return Err(err(
                            line_no,
                            format!("nonpositive weight {weight} on edge ({u},{v})"),
                        ));
                    }
                    let key = (u.min(v), u.max(v));
                    if let Some(prev) = edges.iter().find(|e| (e.0, e.1) == key) {
                        return Err(err(
                            line_no,
                            format!(
                                "duplicate edge ({},{}), first given on line {}",
                                key.0, key.1, prev.3
                            ),
                        ));
                    }
                    edges.push((key.0, key.1, weight, line_no));
                }
                Some(other) => {
                    return Err(err(line_no, format!("unknown line type `{other}`")));
                }
                None => unreachable!("blank lines are skipped"),
            }
        }
        let (n, m, _) = header.ok_or_else(|| err(last_line.max(1), "missing header".into()))?;
        if edges.len() != m {
            return Err(err(
                last_line,
                format!("header declares {m} edges but {} were given", edges.len()),
            ));
        }
        Self::new(n, edges.into_iter().map(|(u, v, w, _)| (u, v, w))).map_err(|e| match e {
            Error::WeightRange => err(0, e.to_string()),
            other => other,
        })
    }

    /// Serializes to the edge-list format; round-trips through [`parse`](Self::parse).
    pub fn to_edge_list(&self) -> String {
        let weighted = !self.is_unweighted();
        let mut out = format!(
            "p {} {}{}\n",
            self.vertex_count,
            self.edges.len(),
            if weighted { " weighted" } else { "" }
        );
        for e in &self.edges {
            if weighted {
                out.push_str(&format!("e {} {} {}\n", e.u, e.v, e.weight));
            } else {
                out.push_str(&format!("e {} {}\n", e.u, e.v));
            }
        }
        out
    }
}

fn parse_count(token: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| Error::Parse {
        line,
        message: format!("missing {what}"),
    })?;
    token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("malformed {what} `{token}`"),
    })
}

impl PartialEq for WeightedGraph {
    fn eq(&self, other: &Self) -> bool {
        self.vertex_count == other.vertex_count && self.edges == other.edges
    }
}

impl Eq for WeightedGraph {}

impl fmt::Debug for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightedGraph")
            .field("vertex_count", &self.vertex_count)
            .field(
                "edges",
                &self
                    .edges
                    .iter()
                    .map(|e| (e.u, e.v, e.weight.to_string()))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// A set of players drawn from `{0, ..., universe_size - 1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coalition {
    words: Vec<u64>,
    universe_size: usize,
}

impl Coalition {
    pub fn empty(universe_size: usize) -> Self {
        Coalition {
            words: vec![0; universe_size.div_ceil(64)],
            universe_size,
        }
    }

    pub fn full(universe_size: usize) -> Self {
        let mut c = Self::empty(universe_size);
        for v in 0..universe_size {
            c.insert(v);
        }
        c
    }

    /// Panics if a member is outside the universe.
    pub fn from_members<I: IntoIterator<Item = usize>>(universe_size: usize, members: I) -> Self {
        let mut c = Self::empty(universe_size);
        for v in members {
            c.insert(v);
        }
        c
    }

    pub fn from_mask(universe_size: usize, mask: u64) -> Self {
        assert!(universe_size >= 64 || mask >> universe_size == 0);
        let mut c = Self::empty(universe_size);
        if let Some(w) = c.words.first_mut() {
            *w = mask;
        }
        c
    }

    /// The coalition as a bitmask when the universe fits in 64 bits.
    pub fn as_mask(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.universe_size && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        assert!(v < self.universe_size, "vertex {v} outside coalition universe");
        self.words[v / 64] |= 1 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        if v < self.universe_size {
            self.words[v / 64] &= !(1 << (v % 64));
        }
    }

    pub fn with(&self, v: usize) -> Self {
        let mut c = self.clone();
        c.insert(v);
        c
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &Coalition) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + bit)
            })
        })
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
