//! A matching game bound to one graph, with memoized coalition values.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::Result;
use crate::graph::{Coalition, WeightedGraph};
use crate::matching::{coalition_value_scaled, subset_dp};
use crate::number::Rational;

/// Games with at most this many players tabulate `v` for all `2^n`
/// coalitions on first use.
pub const TABLE_MAX_PLAYERS: usize = 22;

const CACHE_CAPACITY: usize = 1 << 16;

/// The matching game on `graph`: `v(S)` is the maximum weight of a matching
/// in the subgraph induced by `S`.
///
/// Values are kept in the graph's scaled integer units (see
/// [`WeightedGraph::scale`]) and converted to rationals on request. Small
/// games are tabulated; larger ones go through a bounded cache in front of
/// the blossom solver. Lookups are safe from several threads.
pub struct MatchingGame {
    graph: WeightedGraph,
    table: OnceLock<Vec<i128>>,
    cache: Mutex<HashMap<Coalition, i128>>,
}

impl MatchingGame {
    pub fn new(graph: WeightedGraph) -> Self {
        MatchingGame {
            graph,
            table: OnceLock::new(),
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn player_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn is_tabulated(&self) -> bool {
        self.player_count() <= TABLE_MAX_PLAYERS
    }

    fn table(&self) -> &[i128] {
        self.table.get_or_init(|| {
            let g = &self.graph;
            let edges: Vec<_> = g
                .edges()
                .iter()
                .enumerate()
                .map(|(k, e)| (e.u, e.v, g.scaled_weight(k)))
                .collect();
            subset_dp::value_table(g.vertex_count(), &edges)
        })
    }

    /// `v(S)` in scaled units for a coalition given as a bitmask.
    pub fn scaled_value_mask(&self, mask: u64) -> i128 {
        if self.is_tabulated() {
            self.table()[mask as usize]
        } else {
            self.scaled_value(&Coalition::from_mask(self.player_count(), mask))
                .expect("mask universe matches")
        }
    }

    pub fn scaled_value(&self, s: &Coalition) -> Result<i128> {
        self.graph.check_universe(s)?;
        if self.is_tabulated() {
            let mask = s.as_mask().expect("tabulated games fit in 64 bits");
            return Ok(self.table()[mask as usize]);
        }
        if let Some(&v) = self.cache.lock().unwrap().get(s) {
            return Ok(v);
        }
        let v = coalition_value_scaled(&self.graph, s)?;
        let mut cache = self.cache.lock().unwrap();
        if cache.len() >= CACHE_CAPACITY {
            cache.clear();
        }
        cache.insert(s.clone(), v);
        Ok(v)
    }

    pub fn value(&self, s: &Coalition) -> Result<Rational> {
        Ok(self.graph.unscale(self.scaled_value(s)?))
    }

    pub fn grand_value(&self) -> Rational {
        self.value(&Coalition::full(self.player_count()))
            .expect("full coalition matches universe")
    }

    /// Converts a scaled quantity to an exact rational.
    pub fn unscale(&self, value: i128) -> Rational {
        self.graph.unscale(value)
    }
}
