//! The matrix matching between `p × q` grid cells and its use to make a
//! coloring neighbor-locating by adding a matching.

use std::collections::BTreeSet;

use serde::Serialize;

use super::ConstructionError;
use crate::coloring::{check_nl, Color, Coloring, Verdict};
use crate::graph::{Graph, Vertex};

/// A grid position `(row, column)`, both 1-based.
pub type Cell = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingGrid {
    pub p: usize,
    pub q: usize,
    pub edges: Vec<(Cell, Cell)>,
}

/// Edges `(2i-1, j) ~ (2i, i+j)` for `1 ≤ i ≤ ⌊p/2⌋`, `1 ≤ j ≤ q`, with
/// column indices taken modulo `q` in `1..=q`.
pub fn matrix_matching(p: usize, q: usize) -> Result<MatchingGrid, ConstructionError> {
    if p == 0 || p >= q {
        return Err(ConstructionError::Invalid(format!("matrix matching needs 0 < p < q, got p={p}, q={q}")));
    }
    let edges = (1..=p / 2)
        .flat_map(|i| (1..=q).map(move |j| ((2 * i - 1, j), (2 * i, (i + j - 1) % q + 1))))
        .collect();
    Ok(MatchingGrid { p, q, edges })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatchingProperty {
    /// Endpoints of every edge lie in different columns.
    DistinctColumns,
    /// Saturated cells of one column are matched into pairwise different columns.
    SeparatesColumns,
    /// Each column has at most one unsaturated cell.
    OneUnsaturatedPerColumn,
}

impl MatchingGrid {
    /// Returns the first property that fails, if any.
    pub fn violated_property(&self) -> Option<MatchingProperty> {
        let mut partner = vec![vec![None; self.q + 1]; self.p + 1];
        for &(a, b) in &self.edges {
            if a.1 == b.1 {
                return Some(MatchingProperty::DistinctColumns);
            }
            for (x, y) in [(a, b), (b, a)] {
                if partner[x.0][x.1].replace(y.1).is_some() {
                    // A cell matched twice is not a matching; report it as a separation failure.
                    return Some(MatchingProperty::SeparatesColumns);
                }
            }
        }
        #[allow(clippy::needless_range_loop)]
        for col in 1..=self.q {
            let targets: Vec<usize> = (1..=self.p).filter_map(|row| partner[row][col]).collect();
            if targets.iter().collect::<BTreeSet<_>>().len() != targets.len() {
                return Some(MatchingProperty::SeparatesColumns);
            }
            if self.p - targets.len() > 1 {
                return Some(MatchingProperty::OneUnsaturatedPerColumn);
            }
        }
        None
    }
}

/// Adds the matrix matching between the grid vertices `m[i][j]` so that
/// `phi` becomes neighbor-locating.
///
/// Preconditions (each reported separately): the grid vertices are
/// independent; colors above `base` appear exactly on the grid, column `j`
/// colored `base + j`; every base color is used off the grid; any two
/// vertices not both on the grid are already neighbor-distinguished.
pub fn extend_with_matching(
    g: &Graph,
    grid: &[Vec<Vertex>],
    phi: &Coloring,
    base: Color,
) -> Result<Graph, ConstructionError> {
    let p = grid.len();
    if p == 0 {
        return Ok(g.clone());
    }
    let q = grid[0].len();
    if grid.iter().any(|row| row.len() != q) {
        return Err(ConstructionError::Invalid("grid rows have different lengths".into()));
    }
    let matching = matrix_matching(p, q)?;
    let on_grid: BTreeSet<Vertex> = grid.iter().flatten().copied().collect();
    if on_grid.len() != p * q {
        return Err(ConstructionError::Precondition("grid vertices are not distinct".into()));
    }
    if let Some(&(u, v)) = g.edges().iter().find(|(u, v)| on_grid.contains(u) && on_grid.contains(v)) {
        return Err(ConstructionError::Precondition(format!("grid is not independent: edge ({u}, {v})")));
    }
    if phi.k() != base + q as Color {
        return Err(ConstructionError::Precondition(format!("palette size {} differs from base + q = {}", phi.k(), base + q as Color)));
    }
    for (i, row) in grid.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if phi.color(v) != base + j as Color + 1 {
                return Err(ConstructionError::Precondition(format!("grid cell ({}, {}) is not colored base + {}", i + 1, j + 1, j + 1)));
            }
        }
    }
    let off_grid: BTreeSet<Color> = g.vertices().filter(|v| !on_grid.contains(v)).map(|v| phi.color(v)).collect();
    if let Some(v) = g.vertices().find(|v| !on_grid.contains(v) && phi.color(*v) > base) {
        return Err(ConstructionError::Precondition(format!("vertex {v} off the grid uses a grid color")));
    }
    if off_grid.len() != base as usize {
        return Err(ConstructionError::Precondition("some base color is unused off the grid".into()));
    }
    // Pairs not both on the grid must already be neighbor-distinguished.
    let signature = |v: Vertex| (phi.color(v), g.neighbors(v).iter().map(|&u| phi.color(u)).collect::<BTreeSet<_>>());
    let mut seen = std::collections::HashMap::new();
    for v in g.vertices() {
        if let Some(u) = seen.insert(signature(v), v) {
            if !(on_grid.contains(&u) && on_grid.contains(&v)) {
                return Err(ConstructionError::Precondition(format!("vertices {u} and {v} are not neighbor-distinguished")));
            }
        }
    }
    let added = matching.edges.iter().map(|&((r1, c1), (r2, c2))| (grid[r1 - 1][c1 - 1], grid[r2 - 1][c2 - 1]));
    let out = Graph::new(g.n(), g.edges().iter().copied().chain(added))?.with_labels(g.labels().to_vec())?;
    match check_nl(&out, phi) {
        Ok(Verdict::Ok) => Ok(out),
        Ok(Verdict::Violation { u, v }) => Err(ConstructionError::Invariant {
            check: "spanning supergraph",
            detail: format!("vertices {u} and {v} still share a signature"),
        }),
        Err(e) => Err(ConstructionError::Invariant { check: "spanning supergraph", detail: e.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids() {
        let m = matrix_matching(2, 3).unwrap();
        assert_eq!(m.edges, vec![((1, 1), (2, 2)), ((1, 2), (2, 3)), ((1, 3), (2, 1))]);
        let m = matrix_matching(3, 4).unwrap();
        assert_eq!(m.edges.len(), 4);
        assert!(m.edges.iter().all(|&(a, b)| a.0 <= 2 && b.0 <= 2));
        assert!(matrix_matching(1, 2).unwrap().edges.is_empty());
        assert!(matrix_matching(3, 3).is_err());
    }

    #[test]
    fn all_properties_up_to_twelve() {
        for q in 2..=12 {
            for p in 1..q {
                assert_eq!(matrix_matching(p, q).unwrap().violated_property(), None, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn detects_broken_grids() {
        let same_column = MatchingGrid { p: 2, q: 3, edges: vec![((1, 1), (2, 1))] };
        assert_eq!(same_column.violated_property(), Some(MatchingProperty::DistinctColumns));
        let clash = MatchingGrid { p: 3, q: 4, edges: vec![((1, 1), (2, 2)), ((3, 1), (2, 3)), ((1, 2), (3, 3))] };
        assert!(clash.violated_property().is_some());
        let lonely = MatchingGrid { p: 3, q: 4, edges: vec![] };
        assert_eq!(lonely.violated_property(), Some(MatchingProperty::OneUnsaturatedPerColumn));
    }

    #[test]
    fn star_with_leaf_grid() {
        // Center colored 1; six leaves in a 2×3 grid colored 2, 3, 4 by column.
        let g = Graph::new(7, (1..=6).map(|v| (0, v))).unwrap();
        let grid = vec![vec![1, 2, 3], vec![4, 5, 6]];
        let phi = Coloring::new(vec![1, 2, 3, 4, 2, 3, 4], 4).unwrap();
        let out = extend_with_matching(&g, &grid, &phi, 1).unwrap();
        assert_eq!(out.m(), 9);
        assert!(check_nl(&out, &phi).unwrap().is_ok());
        let empty: Vec<Vec<Vertex>> = Vec::new();
        assert_eq!(extend_with_matching(&g, &empty, &phi, 1).unwrap(), g);
    }
}
