//! Exact Shapley values of matching games.

mod auto;
mod exact;

pub use auto::{
    shapley_auto, shapley_auto_with, shapley_with_method, ComponentMethod, ExactResult, Method,
};
pub use exact::{
    is_pivotal, is_zero_shapley, raw_shapley_brute_force, shapley_brute_force,
    shapley_brute_force_with_limit, shapley_by_components, shapley_from_pivotal_counts,
    shapley_permutation_oracle, PERMUTATION_ORACLE_MAX,
};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::game::MatchingGame;
use crate::number::{factorial, Rational};

/// Shapley value `φ_i` of every player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapleyVector {
    values: Vec<Rational>,
}

/// Raw Shapley values `κ_i = n! φ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawShapleyVector {
    values: Vec<Rational>,
}

impl ShapleyVector {
    pub fn new(values: Vec<Rational>) -> Self {
        ShapleyVector { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn total(&self) -> Rational {
        self.values.iter().sum()
    }

    pub fn to_raw(&self) -> RawShapleyVector {
        let scale = Rational::from_integer(factorial(self.values.len()));
        RawShapleyVector {
            values: self.values.iter().map(|v| v * &scale).collect(),
        }
    }

    /// Efficiency (`Σ φ_i = v(N)`) and nonnegativity.
    pub fn satisfies_efficiency(&self, game: &MatchingGame) -> bool {
        self.values.len() == game.player_count()
            && self.total() == game.grand_value()
            && self.values.iter().all(|v| !v.is_negative())
    }
}

impl std::ops::Index<usize> for ShapleyVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.values[i]
    }
}

impl RawShapleyVector {
    pub fn new(values: Vec<Rational>) -> Self {
        RawShapleyVector { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn to_normalized(&self) -> ShapleyVector {
        let scale = Rational::from_integer(factorial(self.values.len()));
        ShapleyVector {
            values: self.values.iter().map(|v| v / &scale).collect(),
        }
    }

    /// Entries as integers, when every entry is integral (always the case
    /// for unweighted games).
    pub fn as_integers(&self) -> Option<Vec<BigInt>> {
        self.values
            .iter()
            .map(|v| v.is_integer().then(|| v.to_integer()))
            .collect()
    }
}

impl std::ops::Index<usize> for RawShapleyVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.values[i]
    }
}

/// Sum of scaled integers that spills into a big integer instead of
/// overflowing.
#[derive(Debug, Clone, Default)]
pub(crate) struct Accumulator {
    small: i128,
    big: BigInt,
}

impl Accumulator {
    pub(crate) fn add(&mut self, x: i128) {
        match self.small.checked_add(x) {
            Some(v) => self.small = v,
            None => {
                self.big += self.small;
                self.small = x;
            }
        }
    }

    pub(crate) fn merge(&mut self, other: Accumulator) {
        self.big += other.big;
        self.add(other.small);
    }

    pub(crate) fn total(&self) -> BigInt {
        if self.big.is_zero() {
            BigInt::from(self.small)
        } else {
            &self.big + self.small
        }
    }
}
