//! Polynomial-time exact solvers for structured graph classes.

mod degree_two;
mod modular;

pub use degree_two::{
    eta_path, eta_path_parts, shapley_cycle, shapley_degree_two, shapley_path, PathPivots,
};
pub use modular::{
    find_modular_decomposition, shapley_by_player_types, shapley_modular, ModuleKind,
    TypePartition, TypeProfile,
};
