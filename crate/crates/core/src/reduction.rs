//! Counting perfectly matchable vertex subsets through Shapley values.
//!
//! For a graph `G` on `n` vertices, `G_i` adds a vertex `y_0` adjacent to
//! every vertex of `G` and a tail `y_0 - y_1 - ... - y_i`. The raw Shapley
//! value of the tail end satisfies
//!
//! ```text
//! κ_{y_i}(G_i) = C(i) + Σ_k (k+i)! (n-k)! ᾱ_k   (i even)
//! κ_{y_i}(G_i) = C(i) + Σ_k (k+i)! (n-k)! α_k   (i odd)
//! ```
//!
//! where `α_k` counts size-`k` subsets with a perfect matching and
//! `ᾱ_k = C(n,k) - α_k`. Substituting `ᾱ_k` in the even rows gives one
//! square system in `α`, solved here exactly. The module is a cross-check
//! of the exact Shapley code, not a fast counter.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::game::MatchingGame;
use crate::graph::WeightedGraph;
use crate::number::{binomial, Binomials, Factorials, Rational};
use crate::shapley::raw_shapley_brute_force;

/// Largest graph for which matchable subsets are counted by enumeration.
pub const COUNT_MAX_VERTICES: usize = 20;
/// Largest base graph accepted by [`verify_reduction`].
pub const VERIFY_MAX_VERTICES: usize = 8;
/// Largest size accepted by [`pascal_matrix_determinant_check`].
pub const PASCAL_MAX: usize = 30;

/// `α_0, ..., α_n`: number of size-`k` vertex subsets whose induced
/// subgraph has a perfect matching.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaVector {
    pub alpha: Vec<BigInt>,
}

impl AlphaVector {
    /// Number of base vertices `n` (the vector has `n + 1` entries).
    pub fn vertex_count(&self) -> usize {
        self.alpha.len() - 1
    }

    /// Checks `α_0 = 1`, `0 ≤ α_k ≤ C(n,k)` and `α_k = 0` for odd `k`.
    pub fn validate(&self) -> Result<()> {
        let n = self.alpha.len().checked_sub(1).ok_or_else(|| {
            Error::Inconsistent("alpha vector is empty".into())
        })?;
        if !self.alpha[0].is_one() {
            return Err(Error::Inconsistent(format!("alpha_0 = {}", self.alpha[0])));
        }
        for (k, a) in self.alpha.iter().enumerate() {
            let cap = binomial(n as i64, k as i64);
            if a.is_negative() || *a > cap {
                return Err(Error::Inconsistent(format!("alpha_{k} = {a} outside 0..={cap}")));
            }
            if k % 2 == 1 && !a.is_zero() {
                return Err(Error::Inconsistent(format!("alpha_{k} = {a} for odd k")));
            }
        }
        Ok(())
    }
}

impl std::fmt::Display for AlphaVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (k, a) in self.alpha.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

fn unweighted_game(g: &WeightedGraph) -> Result<MatchingGame> {
    if g.vertex_count() > COUNT_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "matchable subset counting",
            n: g.vertex_count(),
            limit: COUNT_MAX_VERTICES,
        });
    }
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    Ok(MatchingGame::new(WeightedGraph::unweighted(g.vertex_count(), &edges)?))
}

/// `α_k` by enumerating all size-`k` subsets; weights are ignored.
pub fn count_matchable_subsets(g: &WeightedGraph, k: usize) -> Result<BigInt> {
    let n = g.vertex_count();
    if k > n {
        return Err(Error::InvalidArgument(format!(
            "subset size {k} exceeds vertex count {n}"
        )));
    }
    Ok(count_all(&unweighted_game(g)?)[k].clone())
}

/// The full vector `α_0, ..., α_n`.
pub fn count_matchable_all(g: &WeightedGraph) -> Result<AlphaVector> {
    Ok(AlphaVector {
        alpha: count_all(&unweighted_game(g)?),
    })
}

fn count_all(game: &MatchingGame) -> Vec<BigInt> {
    let n = game.player_count();
    let mut counts = vec![0u64; n + 1];
    for mask in 0..1u64 << n {
        let size = mask.count_ones() as usize;
        if size.is_multiple_of(2) && game.scaled_value_mask(mask) == (size / 2) as i128 {
            counts[size] += 1;
        }
    }
    counts.into_iter().map(BigInt::from).collect()
}

/// `G_i`: base vertices `0..n`, then `y_j = n + j` for `j = 0..=i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentedGraph {
    pub base: WeightedGraph,
    pub tail_length: usize,
    pub graph: WeightedGraph,
}

impl AugmentedGraph {
    /// Vertex id of `y_j`.
    pub fn y(&self, j: usize) -> usize {
        assert!(j <= self.tail_length, "y_{j} beyond tail length {}", self.tail_length);
        self.base.vertex_count() + j
    }

    /// The tail end `y_i`.
    pub fn tail_end(&self) -> usize {
        self.y(self.tail_length)
    }
}

pub fn build_augmented_graph(g: &WeightedGraph, i: usize) -> Result<AugmentedGraph> {
    if !g.is_unweighted() {
        return Err(Error::WeightedInput);
    }
    let n = g.vertex_count();
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    edges.extend((0..n).map(|v| (v, n)));
    edges.extend((1..=i).map(|j| (n + j - 1, n + j)));
    Ok(AugmentedGraph {
        base: g.clone(),
        tail_length: i,
        graph: WeightedGraph::unweighted(n + i + 1, &edges)?,
    })
}

/// `C(i) = Σ_{k=1}^{⌊i/2⌋} Σ_{j=0}^{n+i-2k} (j+2k-1)! (n+i-j-2k+1)! C(n+i-2k, j)`.
pub fn constant_c(n: usize, i: usize) -> BigInt {
    let factorials = Factorials::up_to(n + i + 1);
    let binomials = Binomials::up_to(n + i);
    let mut total = BigInt::zero();
    for k in 1..=i / 2 {
        let top = n + i - 2 * k;
        for j in 0..=top {
            total += factorials.get(j + 2 * k - 1)
                * factorials.get(n + i - j - 2 * k + 1)
                * binomials.get(top as i64, j as i64);
        }
    }
    total
}

/// Coefficient matrix and right-hand side of the parity-normalized system
/// in the unknowns `α_0..α_n`.
pub fn reduction_system(raw_values: &[Rational], n: usize) -> Result<(Vec<Vec<Rational>>, Vec<Rational>)> {
    if raw_values.len() != n + 1 {
        return Err(Error::InvalidArgument(format!(
            "expected {} raw values, got {}",
            n + 1,
            raw_values.len()
        )));
    }
    let factorials = Factorials::up_to(2 * n);
    let mut matrix = Vec::with_capacity(n + 1);
    let mut rhs = Vec::with_capacity(n + 1);
    for (i, kappa) in raw_values.iter().enumerate() {
        let row: Vec<BigInt> = (0..=n)
            .map(|k| factorials.get(k + i) * factorials.get(n - k))
            .collect();
        let mut b = kappa - Rational::from_integer(constant_c(n, i));
        if i % 2 == 0 {
            let shift: BigInt = row
                .iter()
                .enumerate()
                .map(|(k, a)| a * binomial(n as i64, k as i64))
                .sum();
            b -= Rational::from_integer(shift);
            matrix.push(row.into_iter().map(|a| Rational::from_integer(-a)).collect());
        } else {
            matrix.push(row.into_iter().map(Rational::from_integer).collect());
        }
        rhs.push(b);
    }
    Ok((matrix, rhs))
}

/// Solves `A x = b` exactly by Gaussian elimination, pivoting on the entry
/// of largest magnitude in each column.
pub fn solve_linear_system(
    mut matrix: Vec<Vec<Rational>>,
    mut rhs: Vec<Rational>,
) -> Result<Vec<Rational>> {
    let size = rhs.len();
    if matrix.len() != size || matrix.iter().any(|row| row.len() != size) {
        return Err(Error::InvalidArgument("linear system is not square".into()));
    }
    for col in 0..size {
        let pivot = (col..size)
            .filter(|&r| !matrix[r][col].is_zero())
            .max_by(|&a, &b| matrix[a][col].abs().cmp(&matrix[b][col].abs()).then(b.cmp(&a)))
            .ok_or(Error::Singular)?;
        matrix.swap(col, pivot);
        rhs.swap(col, pivot);
        for r in col + 1..size {
            if matrix[r][col].is_zero() {
                continue;
            }
            let factor = &matrix[r][col] / &matrix[col][col];
            let (upper, lower) = matrix.split_at_mut(r);
            for (target, source) in lower[0][col..].iter_mut().zip(&upper[col][col..]) {
                *target -= &factor * source;
            }
            let delta = &factor * &rhs[col];
            rhs[r] -= delta;
        }
    }
    let mut x = vec![Rational::zero(); size];
    for r in (0..size).rev() {
        let mut acc = rhs[r].clone();
        for c in r + 1..size {
            acc -= &matrix[r][c] * &x[c];
        }
        x[r] = acc / &matrix[r][r];
    }
    Ok(x)
}

/// Recovers `α` from the raw values `κ_{y_i}(G_i)`, `i = 0..=n`.
pub fn recover_alpha_from_shapley(raw_values: &[Rational], n: usize) -> Result<AlphaVector> {
    let solution = recover_alpha_rational(raw_values, n)?;
    let alpha = solution
        .iter()
        .enumerate()
        .map(|(k, a)| {
            if a.is_integer() {
                Ok(a.to_integer())
            } else {
                Err(Error::Inconsistent(format!("alpha_{k} = {a} is not an integer")))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let alpha = AlphaVector { alpha };
    alpha.validate()?;
    Ok(alpha)
}

fn recover_alpha_rational(raw_values: &[Rational], n: usize) -> Result<Vec<Rational>> {
    let (matrix, rhs) = reduction_system(raw_values, n)?;
    solve_linear_system(matrix, rhs)
}

/// Raw Shapley value of `y_i` in `G_i`, by enumeration.
pub fn tail_raw_shapley(g: &WeightedGraph, i: usize) -> Result<Rational> {
    let augmented = build_augmented_graph(g, i)?;
    let player = augmented.tail_end();
    raw_shapley_brute_force(&MatchingGame::new(augmented.graph), player)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    /// `κ_{y_i}(G_i)` for `i = 0..=n`.
    pub raw_values: Vec<Rational>,
    /// Solution of the system, one entry per `k`.
    pub recovered: Vec<Rational>,
    /// `α` by direct enumeration.
    pub counted: AlphaVector,
}

impl ReductionReport {
    pub fn agrees(&self, k: usize) -> bool {
        self.recovered[k] == Rational::from_integer(self.counted.alpha[k].clone())
    }

    pub fn passed(&self) -> bool {
        (0..self.recovered.len()).all(|k| self.agrees(k))
    }
}

/// Runs the whole reduction on `g` and compares with direct counting.
pub fn verify_reduction(g: &WeightedGraph) -> Result<ReductionReport> {
    if !g.is_unweighted() {
        return Err(Error::WeightedInput);
    }
    let n = g.vertex_count();
    if n > VERIFY_MAX_VERTICES {
        return Err(Error::TooLarge {
            what: "reduction check",
            n,
            limit: VERIFY_MAX_VERTICES,
        });
    }
    let raw_values = (0..=n)
        .into_par_iter()
        .map(|i| tail_raw_shapley(g, i))
        .collect::<Result<Vec<_>>>()?;
    let recovered = recover_alpha_rational(&raw_values, n)?;
    Ok(ReductionReport {
        raw_values,
        recovered,
        counted: count_matchable_all(g)?,
    })
}

/// Determinant of `B_{ij} = (i+j)!`, `0 ≤ i, j ≤ n`, by fraction-free
/// elimination, checked against `Π_{i=0}^n (i!)²`.
pub fn pascal_matrix_determinant_check(n: usize) -> Result<BigInt> {
    if n > PASCAL_MAX {
        return Err(Error::TooLarge {
            what: "factorial matrix determinant",
            n,
            limit: PASCAL_MAX,
        });
    }
    let factorials = Factorials::up_to(2 * n);
    let matrix: Vec<Vec<BigInt>> = (0..=n)
        .map(|i| (0..=n).map(|j| factorials.get(i + j).clone()).collect())
        .collect();
    let det = bareiss_determinant(matrix);
    let expected: BigInt = (0..=n).map(|i| factorials.get(i) * factorials.get(i)).product();
    if det != expected {
        return Err(Error::Inconsistent(format!(
            "determinant {det} differs from product of squared factorials {expected}"
        )));
    }
    Ok(det)
}

/// Integer determinant by Bareiss elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    let mut sign = BigInt::one();
    let mut previous = BigInt::one();
    for k in 0..size {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let value = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &previous;
                m[i][j] = value;
            }
        }
        previous = m[k][k].clone();
    }
    if size == 0 {
        return BigInt::one();
    }
    sign * &m[size - 1][size - 1]
}
