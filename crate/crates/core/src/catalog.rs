//! Every graph on a few vertices, one per isomorphism class.
//!
//! Graphs on `n` vertices come from those on `n - 1` by adding a vertex
//! with every possible neighbourhood; duplicates are removed through a
//! canonical code. The canonical code maximizes the upper-triangle bit
//! string over all vertex orders that respect an equitable refinement of
//! the degree partition, so it only enumerates permutations inside cells.

use std::collections::{BTreeMap, BTreeSet};

use crate::graph::{Graph, Vertex};

/// Largest order supported: the upper triangle of the adjacency matrix
/// must fit in a `u64`.
pub const MAX_ORDER: usize = 11;

fn refine(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut cell: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    loop {
        let keys: Vec<(usize, Vec<usize>)> = g
            .vertices()
            .map(|v| {
                let mut around: Vec<usize> = g.neighbors(v).iter().map(|&u| cell[u]).collect();
                around.sort_unstable();
                (cell[v], around)
            })
            .collect();
        let ranks: BTreeMap<&(usize, Vec<usize>), usize> =
            keys.iter().collect::<BTreeSet<_>>().into_iter().enumerate().map(|(i, k)| (k, i)).collect();
        let next: Vec<usize> = keys.iter().map(|k| ranks[k]).collect();
        let before = cell.iter().collect::<BTreeSet<_>>().len();
        let after = ranks.len();
        cell = next;
        if after == before {
            break;
        }
    }
    let mut cells = vec![Vec::new(); n];
    for v in g.vertices() {
        cells[cell[v]].push(v);
    }
    cells.retain(|c| !c.is_empty());
    cells
}

fn code_of(g: &Graph, order: &[Vertex]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = (code << 1) | u64::from(g.has_edge(order[i], order[j]));
        }
    }
    code
}

fn permute_cells(g: &Graph, cells: &mut [Vec<Vertex>], at: usize, best: &mut (u64, Vec<Vertex>)) {
    if at == cells.len() {
        let order: Vec<Vertex> = cells.iter().flatten().copied().collect();
        let code = code_of(g, &order);
        if code > best.0 || best.1.is_empty() {
            *best = (code, order);
        }
        return;
    }
    heap_permutations(g, cells, at, cells[at].len(), best);
}

fn heap_permutations(g: &Graph, cells: &mut [Vec<Vertex>], at: usize, size: usize, best: &mut (u64, Vec<Vertex>)) {
    if size <= 1 {
        permute_cells(g, cells, at + 1, best);
        return;
    }
    for i in 0..size {
        heap_permutations(g, cells, at, size - 1, best);
        let j = if size.is_multiple_of(2) { i } else { 0 };
        cells[at].swap(j, size - 1);
    }
}

/// Canonical code and the vertex order realizing it; isomorphic graphs
/// (and only those) share a code.
pub fn canonical_form(g: &Graph) -> (u64, Vec<Vertex>) {
    assert!(g.n() <= MAX_ORDER, "canonical codes support at most {MAX_ORDER} vertices");
    let mut cells = refine(g);
    let mut best = (0u64, Vec::new());
    permute_cells(g, &mut cells, 0, &mut best);
    best
}

fn relabel(g: &Graph, order: &[Vertex]) -> Graph {
    let mut position = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    Graph::new(g.n(), g.edges().iter().map(|&(u, v)| (position[u], position[v]))).expect("relabelling keeps the graph simple")
}

/// One representative per isomorphism class of graphs on `n` vertices,
/// sorted by canonical code. Counts for `n = 0..=8` are
/// 1, 1, 2, 4, 11, 34, 156, 1044, 12346.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    let mut level = vec![Graph::empty(0)];
    for size in 1..=n {
        let mut seen: BTreeMap<u64, Graph> = BTreeMap::new();
        for h in &level {
            for subset in 0u64..(1 << (size - 1)) {
                let edges = h.edges().iter().copied().chain((0..size - 1).filter(|&u| subset >> u & 1 == 1).map(|u| (u, size - 1)));
                let g = Graph::new(size, edges).expect("extension is simple");
                let (code, order) = canonical_form(&g);
                seen.entry(code).or_insert_with(|| relabel(&g, &order));
            }
        }
        level = seen.into_values().collect();
    }
    level
}

pub fn connected_nonisomorphic_graphs(n: usize) -> Vec<Graph> {
    nonisomorphic_graphs(n).into_iter().filter(|g| g.is_connected()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        let counts: Vec<usize> = (0..=6).map(|n| nonisomorphic_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34, 156]);
        let connected: Vec<usize> = (1..=6).map(|n| connected_nonisomorphic_graphs(n).len()).collect();
        assert_eq!(connected, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn isomorphic_graphs_share_codes() {
        let p4 = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let shuffled = Graph::new(4, [(2, 0), (0, 3), (3, 1)]).unwrap();
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(canonical_form(&p4).0, canonical_form(&shuffled).0);
        assert_ne!(canonical_form(&p4).0, canonical_form(&star).0);
    }
}
