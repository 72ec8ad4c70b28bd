//! Shapley values of matching games.
//!
//! A weighted graph `G = (N, E, w)` defines a cooperative game whose value
//! on a coalition `S` is the weight of a maximum-weight matching of the
//! subgraph induced by `S`. This crate computes the Shapley value of that
//! game exactly (enumeration, component splitting, closed forms for graphs of
//! maximum degree two, a player-type program for graphs with few
//! clique/coclique modules) and approximately (a Monte Carlo sampler with a
//! multiplicative guarantee), and provides an exact harness that recovers
//! matchable-subset counts from Shapley values of augmented graphs.

pub mod config;
pub mod error;
pub mod fpras;
pub mod game;
pub mod graph;
pub mod matching;
pub mod number;
pub mod reduction;
pub mod shapley;
pub mod structured;

pub use config::ExactConfig;
pub use error::{Error, Result};
pub use game::MatchingGame;
pub use graph::{Coalition, Edge, WeightedGraph};
pub use matching::{
    coalition_value, find_augmenting_path, is_perfectly_matchable, max_weight_matching, Matching,
};
pub use number::Rational;
