//! Iterative family of graphs with bounded maximum degree and many
//! vertices for their neighbor-locating chromatic number.
//!
//! A level-`i` state holds a graph `G_i`, a neighbor-locating coloring
//! with `i·s` colors and a system of `(i+1)`-tuples covering every vertex
//! exactly once. One step adds a vertex per tuple, takes `s` copies, gives
//! the new vertices of copy `j` the color `i·s + j`, and adds a matrix
//! matching inside every group of tuples with the same color set.

use std::collections::BTreeMap;

use super::matching::matrix_matching;
use super::{path, ConstructionError};
use crate::bounds::base_path_order;
use crate::coloring::{check_nl, Color, Coloring, Verdict};
use crate::graph::{Graph, Vertex};
use crate::solve::{find_nl_coloring, Feasibility};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripletState {
    pub graph: Graph,
    pub phi: Coloring,
    pub tuples: Vec<Vec<Vertex>>,
    pub level: usize,
    pub s: usize,
}

fn invariant(check: &'static str, detail: impl Into<String>) -> ConstructionError {
    ConstructionError::Invariant { check, detail: detail.into() }
}

impl TripletState {
    /// Tuple indices grouped by the set of colors on the tuple, ordered by
    /// that sorted color set.
    pub fn cells(&self) -> BTreeMap<Vec<Color>, Vec<usize>> {
        let mut cells: BTreeMap<Vec<Color>, Vec<usize>> = BTreeMap::new();
        for (t, tuple) in self.tuples.iter().enumerate() {
            let mut key: Vec<Color> = tuple.iter().map(|&v| self.phi.color(v)).collect();
            key.sort_unstable();
            key.dedup();
            cells.entry(key).or_default().push(t);
        }
        cells
    }

    /// Checks the tuple cover, cell sizes, the coloring and the degree bound.
    pub fn check(&self) -> Result<(), ConstructionError> {
        let n = self.graph.n();
        let mut seen = vec![false; n];
        for tuple in &self.tuples {
            if tuple.len() != self.level + 1 {
                return Err(invariant("tuple cover", format!("tuple of length {} at level {}", tuple.len(), self.level)));
            }
            for &v in tuple {
                if v >= n || std::mem::replace(&mut seen[v], true) {
                    return Err(invariant("tuple cover", format!("vertex {v} covered twice or out of range")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(invariant("tuple cover", format!("vertex {v} is not covered")));
        }
        if let Some((key, cell)) = self.cells().into_iter().find(|(_, c)| c.len() >= self.s) {
            return Err(invariant("cell size", format!("cell {key:?} has {} ≥ s tuples", cell.len())));
        }
        if self.phi.k() as usize != self.level * self.s {
            return Err(invariant("neighbor-locating coloring", format!("palette has {} colors", self.phi.k())));
        }
        match check_nl(&self.graph, &self.phi) {
            Ok(Verdict::Ok) => {}
            Ok(Verdict::Violation { u, v }) => {
                return Err(invariant("neighbor-locating coloring", format!("vertices {u} and {v} collide")))
            }
            Err(e) => return Err(invariant("neighbor-locating coloring", e.to_string())),
        }
        if self.graph.max_degree() > self.level + 1 {
            return Err(invariant("maximum degree", format!("{} exceeds {}", self.graph.max_degree(), self.level + 1)));
        }
        Ok(())
    }
}

/// Level 1: the path `P_t` with `t = 4⌊s²(s-1)/8⌋`, a solver-found
/// neighbor-locating `s`-coloring and the pairs `(v_{i-1}, v_{i+1})` for
/// `i ≡ 2, 3 (mod 4)` (1-based path indices).
pub fn base_triplet(s: usize, budget: u64) -> Result<TripletState, ConstructionError> {
    let t = base_path_order(s as u64)? as usize;
    let graph = path(t)?;
    let phi = match find_nl_coloring(&graph, s, budget)?.outcome {
        Feasibility::Feasible(f) if f.k() as usize == s => f,
        Feasibility::Feasible(f) => return Err(invariant("path coloring", format!("found a {}-coloring of P_{t}", f.k()))),
        Feasibility::Infeasible => return Err(invariant("path coloring", format!("P_{t} has no NL {s}-coloring"))),
        Feasibility::BudgetExceeded => return Err(ConstructionError::Budget(format!("NL {s}-coloring of P_{t}"))),
    };
    // 1-based i ≡ 2,3 (mod 4) pairs v_{i-1}, v_{i+1}; in 0-based ids that is (i-2, i).
    let tuples = (2..t).filter(|i| matches!(i % 4, 2 | 3)).map(|i| vec![i - 2, i]).collect();
    let state = TripletState { graph, phi, tuples, level: 1, s };
    state.check()?;
    Ok(state)
}

/// One step from level `i` to level `i + 1`.
pub fn iterate_triplet(state: &TripletState) -> Result<TripletState, ConstructionError> {
    state.check()?;
    let (i, s) = (state.level, state.s);
    let old_n = state.graph.n();
    let tuple_count = state.tuples.len();
    let block = old_n + tuple_count;
    let new_vertex = |copy: usize, t: usize| copy * block + old_n + t;

    let mut edges = Vec::new();
    let mut colors = vec![0 as Color; s * block];
    let mut tuples = Vec::with_capacity(s * tuple_count);
    for copy in 0..s {
        let offset = copy * block;
        edges.extend(state.graph.edges().iter().map(|&(u, v)| (u + offset, v + offset)));
        for v in 0..old_n {
            colors[offset + v] = state.phi.color(v);
        }
        for (t, tuple) in state.tuples.iter().enumerate() {
            let x = new_vertex(copy, t);
            edges.extend(tuple.iter().map(|&v| (v + offset, x)));
            colors[x] = (i * s + copy + 1) as Color;
            tuples.push(tuple.iter().map(|&v| v + offset).chain([x]).collect());
        }
    }

    // Cells of the first copy; the grid row of a tuple holds its new vertex in every copy.
    for cell in state.cells().values() {
        let p = cell.len();
        if p >= s {
            return Err(invariant("cell size", format!("cell with {p} tuples, s = {s}")));
        }
        let grid: Vec<Vec<Vertex>> = cell.iter().map(|&t| (0..s).map(|copy| new_vertex(copy, t)).collect()).collect();
        let matching = matrix_matching(p, s)?;
        edges.extend(matching.edges.iter().map(|&((r1, c1), (r2, c2))| (grid[r1 - 1][c1 - 1], grid[r2 - 1][c2 - 1])));
    }

    let graph = Graph::new(s * block, edges)?;
    let phi = Coloring::new(colors, ((i + 1) * s) as Color)?;
    let next = TripletState { graph, phi, tuples, level: i + 1, s };
    next.check()?;
    Ok(next)
}

/// The level-`(Δ-1)` member: maximum degree at most `Δ` and a
/// neighbor-locating coloring with `(Δ-1)s` colors.
pub fn nl_family(max_degree: usize, s: usize, budget: u64) -> Result<TripletState, ConstructionError> {
    if max_degree < 2 {
        return Err(ConstructionError::Invalid("maximum degree must be at least 2".into()));
    }
    let mut state = base_triplet(s, budget)?;
    for _ in 2..max_degree {
        state = iterate_triplet(&state)?;
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::family_order_formula;
    use crate::solve::DEFAULT_BUDGET;

    #[test]
    fn base_for_four() {
        let base = base_triplet(4, DEFAULT_BUDGET).unwrap();
        assert_eq!(base.graph.n(), 24);
        assert_eq!(base.tuples.len(), 12);
        assert_eq!(&base.tuples[..4], &[vec![0, 2], vec![1, 3], vec![4, 6], vec![5, 7]]);
        assert!(base_triplet(3, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn one_step_for_four() {
        let g2 = nl_family(3, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(g2.graph.n() as u128, family_order_formula(4, 2).unwrap());
        assert_eq!(g2.graph.max_degree(), 3);
        assert_eq!(g2.phi.k(), 8);
        // New vertices: one tuple member plus at most one matching edge beyond the tuple.
        let old = 24;
        for copy in 0..4 {
            for t in 0..12 {
                let x = copy * 36 + old + t;
                assert!(g2.graph.degree(x) <= 3);
            }
        }
        assert!(nl_family(1, 4, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn broken_state_is_rejected() {
        let mut base = base_triplet(4, DEFAULT_BUDGET).unwrap();
        base.tuples.pop();
        assert!(matches!(iterate_triplet(&base), Err(ConstructionError::Invariant { check: "tuple cover", .. })));
    }
}
