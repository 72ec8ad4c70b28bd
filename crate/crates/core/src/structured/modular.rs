//! Player types from clique/coclique modules and the Shapley dynamic program
//! over coalition type profiles.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::game::MatchingGame;
use crate::graph::{Coalition, WeightedGraph};
use crate::number::{Binomials, Factorials, Rational};
use crate::shapley::ShapleyVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModuleKind {
    Clique,
    Coclique,
}

impl ModuleKind {
    pub fn name(self) -> &'static str {
        match self {
            ModuleKind::Clique => "clique",
            ModuleKind::Coclique => "coclique",
        }
    }
}

/// Partition of the players into modules of a single kind. Modules are
/// sorted and ordered by smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypePartition {
    kind: ModuleKind,
    modules: Vec<Vec<usize>>,
}

/// Number of players taken from each module.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TypeProfile {
    pub counts: Vec<usize>,
}

impl TypeProfile {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

impl TypePartition {
    /// Builds a partition and normalizes the module order. Use
    /// [`validate`](Self::validate) to check it against a graph.
    pub fn new(kind: ModuleKind, modules: Vec<Vec<usize>>) -> Self {
        let mut modules: Vec<Vec<usize>> = modules
            .into_iter()
            .filter(|m| !m.is_empty())
            .map(|mut m| {
                m.sort_unstable();
                m
            })
            .collect();
        modules.sort();
        TypePartition { kind, modules }
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    pub fn modules(&self) -> &[Vec<usize>] {
        &self.modules
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.modules.iter().map(Vec::len).collect()
    }

    pub fn player_count(&self) -> usize {
        self.modules.iter().map(Vec::len).sum()
    }

    /// Checks the partition and module properties against `g`.
    pub fn validate(&self, g: &WeightedGraph) -> Result<()> {
        let bad = |reason: String| Error::NotApplicable {
            method: "modular",
            reason,
        };
        let n = g.vertex_count();
        let mut owner = vec![usize::MAX; n];
        for (idx, module) in self.modules.iter().enumerate() {
            for &v in module {
                g.check_vertex(v)?;
                if owner[v] != usize::MAX {
                    return Err(bad(format!("vertex {v} appears in two modules")));
                }
                owner[v] = idx;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(bad(format!("vertex {v} is in no module")));
        }
        if self.kind == ModuleKind::Clique && !g.is_unweighted() {
            return Err(bad("clique modules require an unweighted graph".into()));
        }
        for module in &self.modules {
            let first = module[0];
            for &v in module {
                if outside_profile(g, v, &owner) != outside_profile(g, first, &owner) {
                    return Err(bad(format!(
                        "vertices {first} and {v} differ outside their module"
                    )));
                }
            }
            for (a, &u) in module.iter().enumerate() {
                for &v in &module[a + 1..] {
                    let adjacent = g.edge_index(u, v).is_some();
                    let ok = match self.kind {
                        ModuleKind::Coclique => !adjacent,
                        ModuleKind::Clique => adjacent,
                    };
                    if !ok {
                        return Err(bad(format!(
                            "vertices {u} and {v} break the {} property",
                            self.kind.name()
                        )));
                    }
                }
            }
            if self.kind == ModuleKind::Clique && module.len() > 1 {
                let w = g.weight(module[0], module[1]);
                for (a, &u) in module.iter().enumerate() {
                    for &v in &module[a + 1..] {
                        if g.weight(u, v) != w {
                            return Err(bad("clique module with unequal weights".into()));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn members_of_profile(&self, profile: &TypeProfile, n: usize) -> Coalition {
        let mut c = Coalition::empty(n);
        for (module, &count) in self.modules.iter().zip(&profile.counts) {
            for &v in &module[..count] {
                c.insert(v);
            }
        }
        c
    }

    fn alternate_members(&self, profile: &TypeProfile, n: usize) -> Coalition {
        let mut c = Coalition::empty(n);
        for (module, &count) in self.modules.iter().zip(&profile.counts) {
            for &v in &module[module.len() - count..] {
                c.insert(v);
            }
        }
        c
    }
}

/// Weighted neighbours of `v` outside its own module.
fn outside_profile(g: &WeightedGraph, v: usize, owner: &[usize]) -> Vec<(usize, Rational)> {
    g.neighbors(v)
        .iter()
        .filter(|&&(w, _)| owner[w] != owner[v])
        .map(|&(w, k)| (w, g.edges()[k].weight.clone()))
        .collect()
}

/// Minimum-cardinality decomposition into modules of one kind.
///
/// Two vertices can share a coclique module iff they are non-adjacent and
/// see the same neighbours through edges of the same weights; this relation
/// is an equivalence, so its classes are the minimum decomposition. Clique
/// modules are coclique modules of the complement (unweighted graphs only).
pub fn find_modular_decomposition(g: &WeightedGraph, kind: ModuleKind) -> Result<TypePartition> {
    match kind {
        ModuleKind::Coclique => Ok(false_twin_classes(g, kind)),
        ModuleKind::Clique => {
            if !g.is_unweighted() {
                return Err(Error::WeightedInput);
            }
            Ok(false_twin_classes(&g.complement()?, kind))
        }
    }
}

fn false_twin_classes(g: &WeightedGraph, kind: ModuleKind) -> TypePartition {
    let profile = |v: usize| -> Vec<(usize, &Rational)> {
        g.neighbors(v)
            .iter()
            .map(|&(w, k)| (w, &g.edges()[k].weight))
            .collect()
    };
    let mut modules: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.vertex_count() {
        let pv = profile(v);
        let home = modules.iter_mut().find(|m| {
            let r = m[0];
            g.edge_index(r, v).is_none() && profile(r) == pv
        });
        match home {
            Some(m) => m.push(v),
            None => modules.push(vec![v]),
        }
    }
    TypePartition::new(kind, modules)
}

/// Shapley values of a game whose players split into interchangeable types.
///
/// `value_oracle` returns `v(S)` for any coalition with the given profile.
/// For a player of type `t`, with `m_j` players of type `j`:
///
/// ```text
/// φ = Σ_{profiles p, p_t < m_t} |p|! (n - |p| - 1)! / n!
///       · Π_j C(m_j - [j = t], p_j) · (v(p + e_t) - v(p))
/// ```
///
/// Profiles are visited in lexicographic order and each is evaluated once.
pub fn shapley_by_player_types<F>(
    mut value_oracle: F,
    partition: &TypePartition,
) -> Result<ShapleyVector>
where
    F: FnMut(&TypeProfile) -> Result<Rational>,
{
    let sizes = partition.sizes();
    let k = sizes.len();
    let n = partition.player_count();
    let profile_count = sizes
        .iter()
        .try_fold(1usize, |acc, &m| acc.checked_mul(m + 1))
        .ok_or_else(|| Error::InvalidArgument("too many type profiles".into()))?;

    // Mixed-radix index: the last module varies fastest.
    let mut stride = vec![1usize; k];
    for j in (0..k.saturating_sub(1)).rev() {
        stride[j] = stride[j + 1] * (sizes[j + 1] + 1);
    }
    let mut values = Vec::with_capacity(profile_count);
    let mut counts = vec![0usize; k];
    for _ in 0..profile_count {
        let profile = TypeProfile {
            counts: counts.clone(),
        };
        values.push(value_oracle(&profile)?);
        for j in (0..k).rev() {
            if counts[j] < sizes[j] {
                counts[j] += 1;
                break;
            }
            counts[j] = 0;
        }
    }

    let factorials = Factorials::up_to(n);
    let binomials = Binomials::up_to(sizes.iter().copied().max().unwrap_or(0));
    let mut per_type = Vec::with_capacity(k);
    for t in 0..k {
        let mut total = Rational::zero();
        let mut counts = vec![0usize; k];
        for index in 0..profile_count {
            let mut rest = index;
            for j in 0..k {
                counts[j] = rest / stride[j];
                rest %= stride[j];
            }
            if counts[t] >= sizes[t] {
                continue;
            }
            let marginal = &values[index + stride[t]] - &values[index];
            if marginal.is_zero() {
                continue;
            }
            let size: usize = counts.iter().sum();
            let mut multiplicity = BigInt::from(1);
            for j in 0..k {
                let available = sizes[j] - usize::from(j == t);
                multiplicity *= binomials.get(available as i64, counts[j] as i64);
            }
            let weight = multiplicity * factorials.get(size) * factorials.get(n - size - 1);
            total += marginal * Rational::from_integer(weight);
        }
        per_type.push(total / Rational::from_integer(factorials.get(n).clone()));
    }

    let mut out = vec![Rational::zero(); n];
    for (module, phi) in partition.modules().iter().zip(per_type) {
        for &v in module {
            if v >= n {
                return Err(Error::InvalidArgument(format!(
                    "module member {v} outside 0..{n}"
                )));
            }
            out[v] = phi.clone();
        }
    }
    Ok(ShapleyVector::new(out))
}

/// The player-type program for the matching game on `g`, evaluating each
/// profile on its lowest-indexed members. In debug builds every profile is
/// also evaluated on its highest-indexed members and a mismatch is reported.
pub fn shapley_modular(g: &WeightedGraph, partition: &TypePartition) -> Result<ShapleyVector> {
    partition.validate(g)?;
    let game = MatchingGame::new(g.clone());
    let n = g.vertex_count();
    shapley_by_player_types(
        |profile| {
            let value = game.value(&partition.members_of_profile(profile, n))?;
            if cfg!(debug_assertions) {
                let other = game.value(&partition.alternate_members(profile, n))?;
                if other != value {
                    return Err(Error::Inconsistent(format!(
                        "profile {:?} has two realizations with values {value} and {other}",
                        profile.counts
                    )));
                }
            }
            Ok(value)
        },
        partition,
    )
}
