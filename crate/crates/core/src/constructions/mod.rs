//! Graph families with prescribed chromatic, locating-chromatic and
//! neighbor-locating-chromatic numbers.

mod matching;
mod triplet;

use serde::Serialize;
use thiserror::Error;

pub use matching::{extend_with_matching, matrix_matching, Cell, MatchingGrid, MatchingProperty};
pub use triplet::{base_triplet, iterate_triplet, nl_family, TripletState};

use crate::bounds::{suitable_odd_cycle_length, BoundError};
use crate::catalog::connected_nonisomorphic_graphs;
use crate::coloring::{Coloring, ColoringError};
use crate::graph::{attach_pendants, disjoint_union, identify_vertices, induced_subgraph, Graph, GraphError, Vertex};
use crate::solve::{solve, Kind, SolveError, DEFAULT_BUDGET};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Bound(#[from] BoundError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("invalid parameters: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant '{check}' failed: {detail}")]
    Invariant { check: &'static str, detail: String },
    #[error("search budget exhausted: {0}")]
    Budget(String),
}

type Result<T> = std::result::Result<T, ConstructionError>;

fn nonempty(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        Err(ConstructionError::Invalid(format!("{what} needs at least one vertex")))
    } else {
        Ok(())
    }
}

/// `K_p` with vertices labelled `v_0..`.
pub fn complete(p: usize) -> Result<Graph> {
    nonempty(p, "complete graph")?;
    let edges = (0..p).flat_map(|u| (u + 1..p).map(move |v| (u, v)));
    Ok(Graph::new(p, edges)?.labelled_by(|i| format!("v_{i}"))?)
}

/// `P_n` with vertices labelled `u_0..` in path order.
pub fn path(n: usize) -> Result<Graph> {
    nonempty(n, "path")?;
    Ok(Graph::new(n, (1..n).map(|i| (i - 1, i)))?.labelled_by(|i| format!("u_{i}"))?)
}

/// `C_n` for `n ≥ 3`, labelled `u_0..` in cyclic order.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(ConstructionError::Invalid("a cycle needs at least three vertices".into()));
    }
    Ok(Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?.labelled_by(|i| format!("u_{i}"))?)
}

/// `K_{1,leaves}`: center `c` (vertex 0) and leaves `l_1..`.
pub fn star(leaves: usize) -> Result<Graph> {
    let g = Graph::new(leaves + 1, (1..=leaves).map(|i| (0, i)))?;
    Ok(g.labelled_by(|i| if i == 0 { "c".to_string() } else { format!("l_{i}") })?)
}

/// Attaches `count` pendants to `v`, labelled `{prefix}_1..`.
fn pendants(g: &Graph, v: Vertex, count: usize, prefix: &str) -> Result<Graph> {
    let out = attach_pendants(g, v, count)?.graph;
    let n = g.n();
    let labels = out
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| if i < n { l.clone() } else { Some(format!("{prefix}_{}", i - n + 1)) })
        .collect();
    Ok(out.with_labels(labels)?)
}

/// `K_p` with its `v_0` identified with vertex `u_0` of `h`.
fn clique_on(p: usize, h: &Graph) -> Result<Graph> {
    let kp = complete(p)?;
    let union = disjoint_union(&kp, h)?;
    Ok(identify_vertices(&union.graph, 0, union.remap[0])?.graph)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GpqrShape {
    Complete,
    Star,
    CliqueWithPendants,
    OddCycle,
    CliqueOnOddCycle,
    /// Found by searching small bipartite graphs; not a closed construction.
    Searched,
    OddCycleWithLeaves,
    CliqueOnPathWithPendants,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gpqr {
    pub graph: Graph,
    /// `(χ, χ_L, χ_NL)` the construction is meant to have.
    pub claimed: (u32, u32, u32),
    pub shape: GpqrShape,
    pub experimental: bool,
}

/// A connected graph with `(χ, χ_L, χ_NL) = (p, q, r)`.
///
/// Requires `2 ≤ p ≤ q ≤ r`, excluding `p = q = 2 < r`. The case
/// `2 = p < q < r` has no closed construction here; it searches paths up
/// to 30 vertices and connected bipartite graphs up to 7 vertices and is
/// flagged experimental.
pub fn gpqr(p: usize, q: usize, r: usize) -> Result<Gpqr> {
    gpqr_with_budget(p, q, r, DEFAULT_BUDGET)
}

pub fn gpqr_with_budget(p: usize, q: usize, r: usize, budget: u64) -> Result<Gpqr> {
    if p < 2 || p > q || q > r {
        return Err(ConstructionError::Invalid(format!("need 2 ≤ p ≤ q ≤ r, got ({p}, {q}, {r})")));
    }
    if p == 2 && q == 2 && r > 2 {
        return Err(ConstructionError::Invalid(format!("no graph has (χ, χ_L, χ_NL) = (2, 2, {r})")));
    }
    let claimed = (p as u32, q as u32, r as u32);
    let make = |graph, shape| Ok(Gpqr { graph, claimed, shape, experimental: false });
    if p == q && q == r {
        return make(complete(p)?, GpqrShape::Complete);
    }
    if q == r {
        return if p == 2 {
            make(star(q - 1)?, GpqrShape::Star)
        } else {
            make(pendants(&complete(p)?, 0, q - 1, "w")?, GpqrShape::CliqueWithPendants)
        };
    }
    if p == q {
        let c = cycle(suitable_odd_cycle_length(r as u64)? as usize)?;
        return if p == 3 { make(c, GpqrShape::OddCycle) } else { make(clique_on(p, &c)?, GpqrShape::CliqueOnOddCycle) };
    }
    match p {
        2 => searched_gpqr(q, r, budget),
        3 => {
            let c = cycle(suitable_odd_cycle_length(r as u64)? as usize)?;
            make(pendants(&c, 0, q - 1, "w")?, GpqrShape::OddCycleWithLeaves)
        }
        _ => {
            let n = r * (r - 1) * (r - 2) / 2;
            let g = clique_on(p, &path(n)?)?;
            let anchor = g.find_label(&format!("u_{}", n - 2)).expect("path vertex survives identification");
            make(pendants(&g, anchor, q - 2, "w")?, GpqrShape::CliqueOnPathWithPendants)
        }
    }
}

fn searched_gpqr(q: usize, r: usize, budget: u64) -> Result<Gpqr> {
    let paths = (3..=30).map(path);
    let small = (2..=7).flat_map(connected_nonisomorphic_graphs).map(Ok);
    for candidate in paths.chain(small) {
        let g = candidate?;
        let chi = solve(&g, Kind::Proper, budget)?;
        if chi.value != Some(2) {
            continue;
        }
        let l = solve(&g, Kind::Locating, budget)?;
        let nl = solve(&g, Kind::NeighborLocating, budget)?;
        if l.value == Some(q as u32) && nl.value == Some(r as u32) {
            return Ok(Gpqr { graph: g, claimed: (2, q as u32, r as u32), shape: GpqrShape::Searched, experimental: true });
        }
    }
    Err(ConstructionError::Invalid(format!("no small bipartite graph with (χ, χ_L, χ_NL) = (2, {q}, {r}) was found")))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapPair {
    pub k: usize,
    /// `G_k`: center `v`, leaves `a_1..a_{2k}` and edges `b_i b'_i` whose
    /// ends are both adjacent to `v`.
    pub g: Graph,
    /// Vertices of `G_k` inducing `H_k = K_{1,3k}`: `v`, the `a_i` and the `b_i`.
    pub h_vertices: Vec<Vertex>,
    pub h: Graph,
    /// `f(v) = 1`, `f(a_i) = i + 1`, `f(b_i) = 2i + 1`, `f(b'_i) = 2i`.
    pub coloring: Coloring,
}

impl GapPair {
    /// Claimed `χ_L(G_k) = χ_NL(G_k)`.
    pub fn claimed_g(&self) -> u32 {
        2 * self.k as u32 + 1
    }

    /// Claimed `χ_L(H_k) = χ_NL(H_k)`.
    pub fn claimed_h(&self) -> u32 {
        3 * self.k as u32 + 1
    }
}

/// A graph `G_k` and induced subgraph `H_k` whose locating and
/// neighbor-locating chromatic numbers differ by exactly `k`
/// (`2k + 1` versus `3k + 1`).
pub fn gap_pair(k: usize) -> Result<GapPair> {
    let n = 1 + 4 * k;
    let a = |i: usize| i; // 1..=2k
    let b = |i: usize| 2 * k + 2 * i - 1;
    let b_prime = |i: usize| 2 * k + 2 * i;
    let mut edges: Vec<(Vertex, Vertex)> = (1..=2 * k).map(|i| (0, a(i))).collect();
    for i in 1..=k {
        edges.extend([(0, b(i)), (0, b_prime(i)), (b(i), b_prime(i))]);
    }
    let mut labels = vec![Some("v".to_string()); n];
    let mut colors = vec![1; n];
    for i in 1..=2 * k {
        labels[a(i)] = Some(format!("a_{i}"));
        colors[a(i)] = i as u32 + 1;
    }
    for i in 1..=k {
        labels[b(i)] = Some(format!("b_{i}"));
        labels[b_prime(i)] = Some(format!("b'_{i}"));
        colors[b(i)] = 2 * i as u32 + 1;
        colors[b_prime(i)] = 2 * i as u32;
    }
    let g = Graph::new(n, edges)?.with_labels(labels)?;
    let h_vertices: Vec<Vertex> = std::iter::once(0).chain((1..=2 * k).map(a)).chain((1..=k).map(b)).collect();
    let (h, _) = induced_subgraph(&g, &h_vertices)?;
    let coloring = Coloring::new(colors, 2 * k as u32 + 1)?;
    Ok(GapPair { k, g, h_vertices, h, coloring })
}
