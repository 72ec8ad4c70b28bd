//! Monte Carlo estimation of Shapley values by sampling player orderings.
//!
//! Each sample draws a uniformly random permutation and records the marginal
//! contribution of the player to its predecessors. With
//! `⌈4n²(n-1)²/ε²⌉` samples the scaled average lies within a factor `1 + ε`
//! of the raw value `κ_i` with probability at least 3/4; the median of
//! independent runs drives the failure probability down to any `δ`.
//!
//! Sample `j` of a run with seed `s` shuffles with a ChaCha8 generator keyed
//! by `s` on stream `j`, so the set of permutations does not depend on how
//! samples are spread across threads, and marginals are summed as exact
//! integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::MatchingGame;
use crate::graph::{Coalition, WeightedGraph};
use crate::matching::coalition_value_scaled;
use crate::number::{factorial, to_f64, Rational};
use crate::shapley::Accumulator;

/// Seed offset between amplification runs (odd, so runs never collide).
pub const RUN_SEED_STEP: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EstimateMode {
    /// Estimates `κ_i = n! φ_i`.
    Raw,
    /// Estimates `φ_i`.
    Normalized,
}

impl EstimateMode {
    pub fn name(self) -> &'static str {
        match self {
            EstimateMode::Raw => "raw",
            EstimateMode::Normalized => "normalized",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleEstimate {
    pub player: usize,
    pub estimate: Rational,
    /// Permutations drawn per run; zero on the isolated-player fast path.
    pub samples_used: u64,
    /// Independent runs whose median is reported.
    pub runs: usize,
    pub epsilon: Rational,
    pub seed: u64,
    pub mode: EstimateMode,
}

/// `⌈4n²(n-1)²/ε²⌉`.
pub fn sample_count(n: usize, epsilon: &Rational) -> Result<u64> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "sampling needs at least two players, got {n}"
        )));
    }
    check_epsilon(epsilon)?;
    let n = BigInt::from(n);
    let numerator = Rational::from_integer(BigInt::from(4) * &n * &n * (&n - 1) * (&n - 1));
    let count = (numerator / (epsilon * epsilon)).ceil().to_integer();
    count
        .to_u64()
        .ok_or_else(|| Error::InvalidArgument(format!("sample count {count} is too large")))
}

fn check_epsilon(epsilon: &Rational) -> Result<()> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    Ok(())
}

/// Uniformly random permutation of `0..n`.
pub fn sample_permutation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut sigma: Vec<usize> = (0..n).collect();
    sigma.shuffle(rng);
    sigma
}

/// Generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// `v(P ∪ {i}) - v(P)` where `P` is the set of players before `i` in `sigma`.
pub fn marginal_contribution(g: &WeightedGraph, i: usize, sigma: &[usize]) -> Result<Rational> {
    let game = MatchingGame::new(g.clone());
    let scaled = scaled_marginal(&game, i, sigma)?;
    Ok(game.unscale(scaled))
}

fn scaled_marginal(game: &MatchingGame, i: usize, sigma: &[usize]) -> Result<i128> {
    let n = game.player_count();
    game.graph().check_vertex(i)?;
    let position = sigma
        .iter()
        .position(|&p| p == i)
        .ok_or_else(|| Error::InvalidArgument(format!("player {i} missing from permutation")))?;
    let mut prefix = Coalition::empty(n);
    for &p in &sigma[..position] {
        game.graph().check_vertex(p)?;
        prefix.insert(p);
    }
    if !prefix.iter().any(|p| game.graph().edge_index(p, i).is_some()) {
        return Ok(0);
    }
    let with = prefix.with(i);
    Ok(value_of(game, &with)? - value_of(game, &prefix)?)
}

/// Coalition value without going through the shared cache, which would
/// serialize the sampling threads.
fn value_of(game: &MatchingGame, s: &Coalition) -> Result<i128> {
    if game.is_tabulated() {
        game.scaled_value(s)
    } else {
        coalition_value_scaled(game.graph(), s)
    }
}

/// Single-run estimate of `κ_i`.
pub fn approx_raw_shapley(
    g: &WeightedGraph,
    i: usize,
    epsilon: &Rational,
    seed: u64,
) -> Result<SampleEstimate> {
    estimate(g, i, epsilon, &Rational::new(1.into(), 4.into()), seed, EstimateMode::Raw)
}

/// Median-amplified estimate of `φ_i` with failure probability at most
/// `delta`.
pub fn approx_shapley(
    g: &WeightedGraph,
    i: usize,
    epsilon: &Rational,
    delta: &Rational,
    seed: u64,
) -> Result<SampleEstimate> {
    estimate(g, i, epsilon, delta, seed, EstimateMode::Normalized)
}

/// Number of base runs for confidence `1 - delta`: one when `delta ≥ 1/4`,
/// otherwise the smallest odd integer `≥ ⌈8 ln(1/δ)⌉`.
pub fn amplification_runs(delta: &Rational) -> Result<usize> {
    if !delta.is_positive() || *delta >= Rational::one() {
        return Err(Error::InvalidArgument(format!(
            "delta must lie strictly between 0 and 1, got {delta}"
        )));
    }
    if *delta >= Rational::new(1.into(), 4.into()) {
        return Ok(1);
    }
    let m = (8.0 * (1.0 / to_f64(delta)).ln()).ceil();
    if !m.is_finite() || m > 1e9 {
        return Err(Error::InvalidArgument(format!("delta {delta} is too small")));
    }
    let m = m as usize;
    Ok(if m.is_multiple_of(2) { m + 1 } else { m })
}

/// Seed of amplification run `r`.
pub fn run_seed(seed: u64, r: usize) -> u64 {
    seed.wrapping_add((r as u64).wrapping_mul(RUN_SEED_STEP))
}

/// Estimate for one player in the given mode.
pub fn estimate(
    g: &WeightedGraph,
    i: usize,
    epsilon: &Rational,
    delta: &Rational,
    seed: u64,
    mode: EstimateMode,
) -> Result<SampleEstimate> {
    g.check_vertex(i)?;
    Ok(estimate_all_with(g, Some(i), epsilon, delta, seed, mode)?.remove(0))
}

/// Estimates for every player. Each sampled permutation is shared by all
/// players: one pass over its prefixes yields every marginal.
pub fn estimate_all(
    g: &WeightedGraph,
    epsilon: &Rational,
    delta: &Rational,
    seed: u64,
    mode: EstimateMode,
) -> Result<Vec<SampleEstimate>> {
    estimate_all_with(g, None, epsilon, delta, seed, mode)
}

fn estimate_all_with(
    g: &WeightedGraph,
    only: Option<usize>,
    epsilon: &Rational,
    delta: &Rational,
    seed: u64,
    mode: EstimateMode,
) -> Result<Vec<SampleEstimate>> {
    check_epsilon(epsilon)?;
    let runs = amplification_runs(delta)?;
    let n = g.vertex_count();
    let players: Vec<usize> = match only {
        Some(i) => vec![i],
        None => (0..n).collect(),
    };
    let active: Vec<usize> = players.iter().copied().filter(|&p| g.degree(p) > 0).collect();
    let samples = if active.is_empty() { 0 } else { sample_count(n, epsilon)? };

    let game = MatchingGame::new(g.clone());
    // runs × active players
    let mut raw: Vec<Vec<Rational>> = vec![Vec::with_capacity(runs); active.len()];
    if !active.is_empty() {
        for r in 0..runs {
            let sums = sample_sums(&game, &active, samples, run_seed(seed, r))?;
            for (slot, total) in raw.iter_mut().zip(sums) {
                slot.push(raw_from_sum(g, total, samples));
            }
        }
    }

    let n_factorial = Rational::from_integer(factorial(n));
    let mut out = Vec::with_capacity(players.len());
    let mut raw = raw.into_iter();
    for &p in &players {
        let (value, used) = if g.degree(p) == 0 {
            (Rational::zero(), 0)
        } else {
            let mut runs = raw.next().expect("one estimate list per active player");
            runs.sort();
            (runs.swap_remove(runs.len() / 2), samples)
        };
        let estimate = match mode {
            EstimateMode::Raw => value,
            EstimateMode::Normalized => value / &n_factorial,
        };
        out.push(SampleEstimate {
            player: p,
            estimate,
            samples_used: used,
            runs: if used == 0 { 0 } else { runs },
            epsilon: epsilon.clone(),
            seed,
            mode,
        });
    }
    Ok(out)
}

/// `n!` times the average marginal, back in the graph's weight units.
fn raw_from_sum(g: &WeightedGraph, total: BigInt, samples: u64) -> Rational {
    let n_factorial = factorial(g.vertex_count());
    Rational::new(total * n_factorial, g.scale() * BigInt::from(samples))
}

/// Sums of scaled marginals over `samples` permutations for each player in
/// `players` (all of which have an incident edge).
fn sample_sums(
    game: &MatchingGame,
    players: &[usize],
    samples: u64,
    seed: u64,
) -> Result<Vec<BigInt>> {
    let n = game.player_count();
    let mut position_of = vec![usize::MAX; n];
    for (k, &p) in players.iter().enumerate() {
        position_of[p] = k;
    }
    let single = players.len() == 1;
    let zero = || vec![Accumulator::default(); players.len()];
    let sums = (0..samples)
        .into_par_iter()
        .try_fold(zero, |mut acc, index| -> Result<_> {
            let sigma = sample_permutation(n, &mut sample_rng(seed, index));
            if single {
                acc[0].add(scaled_marginal(game, players[0], &sigma)?);
                return Ok(acc);
            }
            let mut prefix = Coalition::empty(n);
            let mut before = 0i128;
            for &p in &sigma {
                prefix.insert(p);
                let after = value_of(game, &prefix)?;
                if position_of[p] != usize::MAX {
                    acc[position_of[p]].add(after - before);
                }
                before = after;
            }
            Ok(acc)
        })
        .try_reduce(zero, |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                x.merge(y);
            }
            Ok(a)
        })?;
    Ok(sums.iter().map(Accumulator::total).collect())
}

/// Whether `estimate` lies in `[exact / (1 + ε), (1 + ε) exact]`.
pub fn within_factor(estimate: &Rational, exact: &Rational, epsilon: &Rational) -> bool {
    let factor = Rational::one() + epsilon;
    *estimate >= exact / &factor && *estimate <= exact * &factor
}
