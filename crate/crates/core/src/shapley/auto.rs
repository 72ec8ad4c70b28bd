use num_traits::Zero;

use super::exact::shapley_brute_force_with_limit;
use super::ShapleyVector;
use crate::config::ExactConfig;
use crate::error::{Error, Result};
use crate::graph::{Coalition, WeightedGraph};
use crate::number::Rational;
use crate::structured::{
    find_modular_decomposition, shapley_degree_two, shapley_modular, ModuleKind, TypePartition,
};

/// Exact algorithm selectable by callers. `Auto` and `Components` split the
/// graph into connected components first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Auto,
    BruteForce,
    Degree2,
    Modular,
    Components,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Auto,
        Method::BruteForce,
        Method::Degree2,
        Method::Modular,
        Method::Components,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::BruteForce => "bruteforce",
            Method::Degree2 => "degree2",
            Method::Modular => "modular",
            Method::Components => "components",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown method `{s}`")))
    }
}

/// Algorithm that produced the values of one group of vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComponentMethod {
    Zero,
    Degree2,
    Modular(ModuleKind),
    BruteForce,
}

impl ComponentMethod {
    pub fn name(self) -> &'static str {
        match self {
            ComponentMethod::Zero => "zero",
            ComponentMethod::Degree2 => "degree2",
            ComponentMethod::Modular(_) => "modular",
            ComponentMethod::BruteForce => "bruteforce",
        }
    }
}

impl std::fmt::Display for ComponentMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    pub values: ShapleyVector,
    /// Method per vertex.
    pub methods: Vec<ComponentMethod>,
}

impl ExactResult {
    /// Distinct vertex groups (ascending smallest member) with the method
    /// that served them.
    pub fn components(&self, g: &WeightedGraph) -> Vec<(Vec<usize>, ComponentMethod)> {
        g.connected_components()
            .into_iter()
            .map(|block| {
                let m = self.methods[block[0]];
                (block, m)
            })
            .collect()
    }
}

/// Exact Shapley vector using the cheapest applicable method per component,
/// with limits from [`ExactConfig::from_env`].
pub fn shapley_auto(g: &WeightedGraph) -> Result<ExactResult> {
    shapley_auto_with(g, &ExactConfig::from_env())
}

pub fn shapley_auto_with(g: &WeightedGraph, config: &ExactConfig) -> Result<ExactResult> {
    shapley_with_method(g, Method::Auto, config)
}

/// Exact Shapley vector by the requested method. Never approximates: when
/// no exact method fits the limits the error recommends the sampler.
pub fn shapley_with_method(
    g: &WeightedGraph,
    method: Method,
    config: &ExactConfig,
) -> Result<ExactResult> {
    let n = g.vertex_count();
    let limit = config.max_brute_force_vertices;
    let intractable = |e: Error| match e {
        Error::TooLarge { n, limit, .. } => Error::ExactIntractable { n, limit },
        other => other,
    };
    match method {
        Method::Auto | Method::Components => {
            let mut methods = vec![ComponentMethod::Zero; n];
            let mut out = vec![Rational::zero(); n];
            for block in g.connected_components() {
                let coalition = Coalition::from_members(n, block.iter().copied());
                let (sub, members) = g.induced_subgraph(&coalition)?;
                let (phi, used) = if method == Method::Auto {
                    solve_component(&sub, config)?
                } else if sub.vertex_count() == 1 {
                    (ShapleyVector::new(vec![Rational::zero()]), ComponentMethod::Zero)
                } else {
                    let phi = shapley_brute_force_with_limit(&sub, limit).map_err(intractable)?;
                    (phi, ComponentMethod::BruteForce)
                };
                for (value, &v) in phi.into_values().into_iter().zip(&members) {
                    out[v] = value;
                    methods[v] = used;
                }
            }
            Ok(ExactResult {
                values: ShapleyVector::new(out),
                methods,
            })
        }
        Method::BruteForce => {
            let values = shapley_brute_force_with_limit(g, limit).map_err(intractable)?;
            Ok(ExactResult {
                values,
                methods: vec![ComponentMethod::BruteForce; n],
            })
        }
        Method::Degree2 => Ok(ExactResult {
            values: shapley_degree_two(g)?,
            methods: vec![ComponentMethod::Degree2; n],
        }),
        Method::Modular => {
            let partition = small_decomposition(g, config.max_modules)?.ok_or_else(|| {
                Error::NotApplicable {
                    method: "modular",
                    reason: format!("no clique or coclique decomposition with at most {} modules", config.max_modules),
                }
            })?;
            let kind = partition.kind();
            Ok(ExactResult {
                values: shapley_modular(g, &partition)?,
                methods: vec![ComponentMethod::Modular(kind); n],
            })
        }
    }
}

/// Coclique decomposition first, then clique (unweighted only), whichever
/// has at most `max_modules` modules.
fn small_decomposition(g: &WeightedGraph, max_modules: usize) -> Result<Option<TypePartition>> {
    let coclique = find_modular_decomposition(g, ModuleKind::Coclique)?;
    if coclique.len() <= max_modules {
        return Ok(Some(coclique));
    }
    if g.is_unweighted() {
        let clique = find_modular_decomposition(g, ModuleKind::Clique)?;
        if clique.len() <= max_modules {
            return Ok(Some(clique));
        }
    }
    Ok(None)
}

fn solve_component(
    sub: &WeightedGraph,
    config: &ExactConfig,
) -> Result<(ShapleyVector, ComponentMethod)> {
    let k = sub.vertex_count();
    if k == 1 {
        return Ok((ShapleyVector::new(vec![Rational::zero()]), ComponentMethod::Zero));
    }
    if sub.is_unweighted() && sub.max_degree() <= 2 {
        return Ok((shapley_degree_two(sub)?, ComponentMethod::Degree2));
    }
    if let Some(partition) = small_decomposition(sub, config.max_modules)? {
        // All-singleton decompositions are plain enumeration in disguise.
        if partition.len() < k {
            let kind = partition.kind();
            return Ok((shapley_modular(sub, &partition)?, ComponentMethod::Modular(kind)));
        }
    }
    if k <= config.max_brute_force_vertices {
        return Ok((
            shapley_brute_force_with_limit(sub, config.max_brute_force_vertices)?,
            ComponentMethod::BruteForce,
        ));
    }
    Err(Error::ExactIntractable {
        n: k,
        limit: config.max_brute_force_vertices,
    })
}
