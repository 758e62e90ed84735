//! Exact chromatic, locating-chromatic and neighbor-locating-chromatic
//! numbers by backtracking, together with the lower bounds that seed the
//! search and an exhaustive oracle for cross-checking.
//!
//! Budgets count search nodes (color assignments tried), not time, so a
//! run is reproducible. Feasibility means "at most `k` colors": witnesses
//! never contain empty classes.

mod clique;
mod engine;
mod oracle;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::nl_signature_capacity;
use crate::coloring::{check_locating, check_nl, check_proper, Color, Coloring, VerifyError};
use crate::graph::{degree_profile, false_twin_classes, Graph, Vertex};
use engine::{Engine, Outcome};
pub use engine::VertexOrder;
pub use oracle::{brute_force_oracle, ORACLE_LIMIT};

/// Node budget used when the caller has no preference.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

/// Branch nodes spent on the clique lower bound.
const CLIQUE_BUDGET: u64 = 200_000;

/// Signature masks are `u64`, so NL search supports palettes up to this size.
pub const MAX_NL_COLORS: usize = 63;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("locating colorings require a connected graph")]
    Disconnected,
    #[error("palette of {0} colors exceeds the supported maximum of {MAX_NL_COLORS}")]
    TooManyColors(usize),
    #[error("brute force over {k}^{n} colorings exceeds the oracle limit")]
    OracleLimit { n: usize, k: usize },
    #[error("search returned a coloring rejected by the verifier: {0}")]
    Internal(String),
}

/// Which chromatic invariant to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    #[serde(rename = "chi")]
    Proper,
    #[serde(rename = "chi-l")]
    Locating,
    #[serde(rename = "chi-nl")]
    NeighborLocating,
}

impl Kind {
    pub const ALL: [Kind; 3] = [Kind::Proper, Kind::Locating, Kind::NeighborLocating];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Proper => "chi",
            Kind::Locating => "chi-l",
            Kind::NeighborLocating => "chi-nl",
        }
    }

    /// Runs the matching checker from [`crate::coloring`].
    pub fn verify(self, g: &Graph, f: &Coloring) -> Result<bool, VerifyError> {
        let verdict = match self {
            Kind::Proper => check_proper(g, f)?,
            Kind::Locating => check_locating(g, f)?,
            Kind::NeighborLocating => check_nl(g, f)?,
        };
        Ok(verdict.is_ok())
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Kind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chi" | "proper" => Ok(Kind::Proper),
            "chi-l" | "locating" => Ok(Kind::Locating),
            "chi-nl" | "nl" => Ok(Kind::NeighborLocating),
            _ => Err(format!("unknown invariant {s:?} (expected chi, chi-l or chi-nl)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Coloring),
    Infeasible,
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attempt {
    pub outcome: Feasibility,
    pub nodes_explored: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundSource {
    Trivial,
    Clique,
    Twins,
    DegreeCount,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    pub value: u32,
    pub source: BoundSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveReport {
    pub invariant: Kind,
    /// The exact value, when the search finished within budget.
    pub value: Option<u32>,
    pub lower: u32,
    pub upper: u32,
    /// A valid coloring with `upper` colors.
    pub witness: Coloring,
    pub nodes_explored: u64,
    pub lower_bound_used: LowerBound,
}

impl SolveReport {
    pub fn is_exact(&self) -> bool {
        self.value.is_some()
    }
}

/// Smallest `k` with `Σ_{i≤s} d_i ≤ k Σ_{i=1}^{s} C(k-1, i)` for every
/// `1 ≤ s ≤ Δ`, counting non-isolated vertices only.
///
/// This is a valid lower bound for the neighbor-locating chromatic number
/// because non-isolated vertices need pairwise distinct pairs
/// `(f(v), N_f(v))` with `1 ≤ |N_f(v)| ≤ deg(v)`.
pub fn nl_lower_bound_from_degrees(g: &Graph) -> u32 {
    let profile = degree_profile(g);
    let holds = |k: u64| {
        let mut prefix: u128 = 0;
        (1..=profile.max_degree).all(|s| {
            prefix += profile.count(s) as u128;
            nl_signature_capacity(k, s as u64).map_or(true, |cap| prefix <= cap)
        })
    };
    (1u64..).find(|&k| holds(k)).expect("large k always fits") as u32
}

fn greedy_clique_size(g: &Graph, candidates: &[Vertex]) -> usize {
    clique::max_clique(g, Some(candidates), 2_000).0.len()
}

/// Best available lower bound for `kind`, tagged with the argument that
/// produced it. Ties keep the earlier source in the order trivial, clique,
/// twins, degree-count.
pub fn lower_bound(g: &Graph, kind: Kind) -> LowerBound {
    let mut best = LowerBound { value: u32::from(g.n() > 0) + u32::from(g.m() > 0), source: BoundSource::Trivial };
    let mut offer = |value: usize, source| {
        if value as u32 > best.value {
            best = LowerBound { value: value as u32, source };
        }
    };
    offer(clique::max_clique(g, None, CLIQUE_BUDGET).0.len(), BoundSource::Clique);
    if kind != Kind::Proper {
        for class in false_twin_classes(g).iter().filter(|c| c.len() >= 2) {
            // The class needs |T| colors and every common neighbour avoids all of them.
            offer(class.len() + greedy_clique_size(g, g.neighbors(class[0])), BoundSource::Twins);
        }
    }
    if kind == Kind::NeighborLocating {
        offer(nl_lower_bound_from_degrees(g) as usize, BoundSource::DegreeCount);
    }
    best
}

fn twin_partners(g: &Graph, kind: Kind) -> Vec<Vec<Vertex>> {
    let mut partners = vec![Vec::new(); g.n()];
    if kind != Kind::Proper {
        for class in false_twin_classes(g) {
            for &v in &class {
                partners[v] = class.iter().copied().filter(|&u| u != v).collect();
            }
        }
    }
    partners
}

/// Vertices that are pairwise forced apart: the largest false-twin class
/// (locating kinds only) or a large clique, whichever is bigger.
fn forced_distinct(g: &Graph, kind: Kind) -> Vec<Vertex> {
    let (clique, _) = clique::max_clique(g, None, CLIQUE_BUDGET);
    if kind == Kind::Proper {
        return clique;
    }
    let twins = false_twin_classes(g).into_iter().max_by_key(|c| (c.len(), std::cmp::Reverse(c[0]))).unwrap_or_default();
    if twins.len() > clique.len() {
        twins
    } else {
        clique
    }
}

fn check_kind(g: &Graph, kind: Kind, k: usize) -> Result<(), SolveError> {
    if kind == Kind::Locating && !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    if kind == Kind::NeighborLocating && k > MAX_NL_COLORS {
        return Err(SolveError::TooManyColors(k));
    }
    Ok(())
}

fn verified(g: &Graph, kind: Kind, colors: Vec<Color>) -> Result<Coloring, SolveError> {
    let f = Coloring::from_colors(colors).map_err(|e| SolveError::Internal(e.to_string()))?.compress();
    match kind.verify(g, &f) {
        Ok(true) => Ok(f),
        Ok(false) => Err(SolveError::Internal(format!("{kind} witness failed verification"))),
        Err(e) => Err(SolveError::Internal(e.to_string())),
    }
}

/// Searches for a `kind` coloring of `g` using at most `k` colors.
pub fn find_coloring(g: &Graph, kind: Kind, k: usize, budget: u64) -> Result<Attempt, SolveError> {
    find_coloring_with(g, kind, k, budget, VertexOrder::FewestColors)
}

/// [`find_coloring`] with an explicit branching order.
pub fn find_coloring_with(g: &Graph, kind: Kind, k: usize, budget: u64, order: VertexOrder) -> Result<Attempt, SolveError> {
    check_kind(g, kind, k)?;
    if g.n() == 0 {
        let empty = Coloring::new(Vec::new(), 0).expect("empty coloring");
        return Ok(Attempt { outcome: Feasibility::Feasible(empty), nodes_explored: 0 });
    }
    if k == 0 {
        return Ok(Attempt { outcome: Feasibility::Infeasible, nodes_explored: 0 });
    }
    let pre = forced_distinct(g, kind);
    if pre.len() > k {
        return Ok(Attempt { outcome: Feasibility::Infeasible, nodes_explored: 0 });
    }
    let mut engine = Engine::new(g, kind, k, twin_partners(g, kind), &pre, order, budget);
    let outcome = match engine.run(pre.len()) {
        Outcome::Found(colors) => Feasibility::Feasible(verified(g, kind, colors)?),
        Outcome::Exhausted => Feasibility::Infeasible,
        Outcome::OutOfBudget => Feasibility::BudgetExceeded,
    };
    Ok(Attempt { outcome, nodes_explored: engine.nodes() })
}

pub fn find_nl_coloring(g: &Graph, k: usize, budget: u64) -> Result<Attempt, SolveError> {
    find_coloring(g, Kind::NeighborLocating, k, budget)
}

pub fn find_locating_coloring(g: &Graph, k: usize, budget: u64) -> Result<Attempt, SolveError> {
    find_coloring(g, Kind::Locating, k, budget)
}

pub fn find_proper_coloring(g: &Graph, k: usize, budget: u64) -> Result<Attempt, SolveError> {
    find_coloring(g, Kind::Proper, k, budget)
}

/// A coloring known to be valid without search: DSATUR for proper
/// colorings, all-distinct colors otherwise.
fn fallback_witness(g: &Graph, kind: Kind) -> Coloring {
    let colors = match kind {
        Kind::Proper => clique::dsatur(g),
        _ => (1..=g.n() as Color).collect(),
    };
    Coloring::from_colors(colors).expect("colors are 1-based")
}

/// Ascends from the best lower bound until a coloring is found. When the
/// node budget runs out the report carries the interval `[lower, upper]`.
pub fn solve(g: &Graph, kind: Kind, budget: u64) -> Result<SolveReport, SolveError> {
    if kind == Kind::Locating && !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    let bound = lower_bound(g, kind);
    let fallback = fallback_witness(g, kind);
    let upper = fallback.k();
    let mut nodes = 0u64;
    let mut k = bound.value;
    while k < upper {
        let attempt = find_coloring(g, kind, k as usize, budget - nodes)?;
        nodes += attempt.nodes_explored;
        match attempt.outcome {
            Feasibility::Feasible(witness) => {
                let value = witness.k();
                return Ok(SolveReport {
                    invariant: kind,
                    value: Some(value),
                    lower: value,
                    upper: value,
                    witness,
                    nodes_explored: nodes,
                    lower_bound_used: bound,
                });
            }
            Feasibility::Infeasible => k += 1,
            Feasibility::BudgetExceeded => {
                return Ok(SolveReport {
                    invariant: kind,
                    value: None,
                    lower: k,
                    upper,
                    witness: fallback,
                    nodes_explored: nodes,
                    lower_bound_used: bound,
                })
            }
        }
    }
    Ok(SolveReport {
        invariant: kind,
        value: Some(upper),
        lower: upper,
        upper,
        witness: fallback,
        nodes_explored: nodes,
        lower_bound_used: bound,
    })
}

pub fn chromatic_number(g: &Graph, budget: u64) -> SolveReport {
    solve(g, Kind::Proper, budget).expect("proper coloring search has no failure modes")
}

pub fn locating_chromatic_number(g: &Graph, budget: u64) -> Result<SolveReport, SolveError> {
    solve(g, Kind::Locating, budget)
}

pub fn nl_chromatic_number(g: &Graph, budget: u64) -> Result<SolveReport, SolveError> {
    solve(g, Kind::NeighborLocating, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn petersen() -> Graph {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::new(10, outer.chain(spokes).chain(inner)).unwrap()
    }

    fn value(g: &Graph, kind: Kind) -> u32 {
        solve(g, kind, DEFAULT_BUDGET).unwrap().value.unwrap()
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&cycle(11), DEFAULT_BUDGET).value, Some(3));
        assert_eq!(chromatic_number(&complete(4), DEFAULT_BUDGET).value, Some(4));
        assert_eq!(chromatic_number(&petersen(), DEFAULT_BUDGET).value, Some(3));
    }

    #[test]
    fn degree_count_bound() {
        assert_eq!(nl_lower_bound_from_degrees(&cycle(11)), 4);
        assert_eq!(nl_lower_bound_from_degrees(&path(24)), 4);
        assert_eq!(nl_lower_bound_from_degrees(&path(25)), 5);
        assert_eq!(nl_lower_bound_from_degrees(&Graph::empty(3)), 1);
        let k4 = lower_bound(&complete(4), Kind::NeighborLocating);
        assert_eq!(k4, LowerBound { value: 4, source: BoundSource::Clique });
    }

    #[test]
    fn nl_examples() {
        assert_eq!(value(&cycle(11), Kind::NeighborLocating), 4);
        assert_eq!(value(&star(3), Kind::NeighborLocating), 4);
        assert!(matches!(find_nl_coloring(&star(5), 5, DEFAULT_BUDGET).unwrap().outcome, Feasibility::Infeasible));
        assert!(matches!(find_nl_coloring(&star(5), 6, DEFAULT_BUDGET).unwrap().outcome, Feasibility::Feasible(_)));
        assert_eq!(value(&Graph::empty(3), Kind::NeighborLocating), 3);
    }

    #[test]
    fn locating_examples() {
        assert_eq!(value(&cycle(11), Kind::Locating), 3);
        assert_eq!(value(&path(7), Kind::Locating), 3);
        assert_eq!(value(&star(4), Kind::Locating), 5);
        assert_eq!(solve(&Graph::empty(2), Kind::Locating, 10), Err(SolveError::Disconnected));
    }

    #[test]
    fn budget_exhaustion_gives_interval() {
        let report = solve(&path(24), Kind::NeighborLocating, 5).unwrap();
        assert_eq!(report.value, None);
        assert_eq!((report.lower, report.upper), (4, 24));
        assert!(check_nl(&path(24), &report.witness).unwrap().is_ok());
    }

    #[test]
    fn small_paths_match_formula() {
        for n in 1..=12u64 {
            let expected = crate::bounds::path_nl_chromatic(n).unwrap().k as u32;
            assert_eq!(value(&path(n as usize), Kind::NeighborLocating), expected, "P_{n}");
        }
    }
}
