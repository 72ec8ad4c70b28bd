use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::{Accumulator, RawShapleyVector, ShapleyVector};
use crate::config::{ExactConfig, BRUTE_FORCE_CEILING};
use crate::error::{Error, Result};
use crate::game::MatchingGame;
use crate::graph::{Coalition, WeightedGraph};
use crate::number::{Factorials, Rational};

/// Largest game the permutation oracle will enumerate (`n!` orders).
pub const PERMUTATION_ORACLE_MAX: usize = 8;

/// Exact Shapley vector by summing
/// `|S|! (n - |S| - 1)! (v(S ∪ {i}) - v(S)) / n!` over every `S ⊆ N \ {i}`,
/// with the brute-force bound taken from the environment.
pub fn shapley_brute_force(g: &WeightedGraph) -> Result<ShapleyVector> {
    shapley_brute_force_with_limit(g, ExactConfig::from_env().max_brute_force_vertices)
}

pub fn shapley_brute_force_with_limit(g: &WeightedGraph, limit: usize) -> Result<ShapleyVector> {
    check_limit(g, limit.min(BRUTE_FORCE_CEILING), "brute-force enumeration")?;
    let game = MatchingGame::new(g.clone());
    let n = g.vertex_count();
    let factorials = Factorials::up_to(n);
    let values = (0..n)
        .into_par_iter()
        .map(|i| {
            let raw = raw_value_of(&game, i, &factorials);
            raw / Rational::from_integer(factorials.get(n).clone())
        })
        .collect();
    Ok(ShapleyVector::new(values))
}

/// Raw Shapley value `κ_i` of one player by enumeration; `game` must have at
/// most 63 players.
pub fn raw_shapley_brute_force(game: &MatchingGame, player: usize) -> Result<Rational> {
    let g = game.graph();
    g.check_vertex(player)?;
    check_limit(g, BRUTE_FORCE_CEILING, "brute-force enumeration")?;
    let factorials = Factorials::up_to(g.vertex_count());
    Ok(raw_value_of(game, player, &factorials))
}

fn raw_value_of(game: &MatchingGame, i: usize, factorials: &Factorials) -> Rational {
    let n = game.player_count();
    // Per coalition size, the sum of marginal contributions in scaled units.
    let mut by_size = vec![Accumulator::default(); n];
    let low_bits = (1u64 << i) - 1;
    let player_bit = 1u64 << i;
    for m in 0..(1u64 << (n - 1)) {
        // Insert a zero at bit i: enumerates subsets of N \ {i} in
        // increasing mask order.
        let s = (m & low_bits) | ((m & !low_bits) << 1);
        let marginal = game.scaled_value_mask(s | player_bit) - game.scaled_value_mask(s);
        if marginal != 0 {
            by_size[s.count_ones() as usize].add(marginal);
        }
    }
    let mut total = BigInt::zero();
    for (size, acc) in by_size.into_iter().enumerate() {
        let sum = acc.total();
        if !sum.is_zero() {
            total += sum * factorials.get(size) * factorials.get(n - size - 1);
        }
    }
    Rational::new(total, game.graph().scale().clone())
}

fn check_limit(g: &WeightedGraph, limit: usize, what: &'static str) -> Result<()> {
    if g.vertex_count() > limit {
        return Err(Error::TooLarge {
            what,
            n: g.vertex_count(),
            limit,
        });
    }
    Ok(())
}

/// Exact Shapley vector by averaging marginal contributions over all `n!`
/// orderings of the players. A test oracle; limited to
/// [`PERMUTATION_ORACLE_MAX`] players.
pub fn shapley_permutation_oracle(g: &WeightedGraph) -> Result<ShapleyVector> {
    check_limit(g, PERMUTATION_ORACLE_MAX, "permutation enumeration")?;
    let n = g.vertex_count();
    let game = MatchingGame::new(g.clone());
    let mut sums = vec![0i128; n];
    let mut order: Vec<usize> = (0..n).collect();
    let mut count: u64 = 0;
    loop {
        let mut prefix = 0u64;
        let mut before = 0i128;
        for &player in &order {
            prefix |= 1 << player;
            let after = game.scaled_value_mask(prefix);
            sums[player] += after - before;
            before = after;
        }
        count += 1;
        if !next_permutation(&mut order) {
            break;
        }
    }
    let denominator = g.scale() * BigInt::from(count);
    Ok(ShapleyVector::new(
        sums.into_iter()
            .map(|s| Rational::new(BigInt::from(s), denominator.clone()))
            .collect(),
    ))
}

/// Advances to the next permutation in lexicographic order; false after the
/// last one.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else {
        return false;
    };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).unwrap();
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// `(1/n!) Σ_s s! (n - s - 1)! η_s`, where `eta[s]` counts the size-`s`
/// coalitions for which the player is pivotal. Sizes at or beyond `n` are
/// ignored.
pub fn shapley_from_pivotal_counts(eta: &[BigInt], n: usize) -> Rational {
    if n == 0 {
        return Rational::zero();
    }
    let f = Factorials::up_to(n);
    let total: BigInt = eta
        .iter()
        .enumerate()
        .take(n)
        .map(|(s, count)| count * f.get(s) * f.get(n - s - 1))
        .sum();
    Rational::new(total, f.get(n).clone())
}

/// Whether adding `i` to `s` raises the maximum matching size by one.
pub fn is_pivotal(g: &WeightedGraph, i: usize, s: &Coalition) -> Result<bool> {
    if !g.is_unweighted() {
        return Err(Error::WeightedInput);
    }
    g.check_vertex(i)?;
    if s.contains(i) {
        return Err(Error::PlayerInCoalition(i));
    }
    let before = crate::matching::coalition_value_scaled(g, s)?;
    let after = crate::matching::coalition_value_scaled(g, &s.with(i))?;
    Ok(after == before + 1)
}

/// A player has Shapley value zero iff it has no incident edge (all weights
/// are positive).
pub fn is_zero_shapley(g: &WeightedGraph, i: usize) -> Result<bool> {
    g.check_vertex(i)?;
    Ok(g.degree(i) == 0)
}

/// Solves each connected component separately and reassembles the vector.
/// The solver receives the component's induced subgraph.
pub fn shapley_by_components<F>(g: &WeightedGraph, mut solver: F) -> Result<ShapleyVector>
where
    F: FnMut(&WeightedGraph) -> Result<ShapleyVector>,
{
    let mut values = vec![Rational::zero(); g.vertex_count()];
    for block in g.connected_components() {
        let coalition = Coalition::from_members(g.vertex_count(), block.iter().copied());
        let (sub, members) = g.induced_subgraph(&coalition)?;
        let phi = solver(&sub)?;
        if phi.len() != members.len() {
            return Err(Error::Inconsistent(format!(
                "component solver returned {} values for {} players",
                phi.len(),
                members.len()
            )));
        }
        for (value, &v) in phi.into_values().into_iter().zip(&members) {
            values[v] = value;
        }
    }
    Ok(ShapleyVector::new(values))
}

impl RawShapleyVector {
    /// Raw values by enumeration, straight from the coalition sums.
    pub fn brute_force(g: &WeightedGraph) -> Result<Self> {
        check_limit(g, BRUTE_FORCE_CEILING, "brute-force enumeration")?;
        let game = MatchingGame::new(g.clone());
        let factorials = Factorials::up_to(g.vertex_count());
        Ok(RawShapleyVector::new(
            (0..g.vertex_count())
                .into_par_iter()
                .map(|i| raw_value_of(&game, i, &factorials))
                .collect(),
        ))
    }
}
