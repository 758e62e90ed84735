use std::collections::HashSet;

use super::{Graph, GraphError, Vertex};

/// Output of a structural editor: the new graph and, for every vertex of
/// the (second) input graph, its id in the output.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edited {
    pub graph: Graph,
    pub remap: Vec<Vertex>,
}

/// `G ⊔ H`; vertices of `H` are shifted by `|V(G)|`, and `remap` covers `H`.
pub fn disjoint_union(g: &Graph, h: &Graph) -> Result<Edited, GraphError> {
    let shift = g.n();
    let edges = g.edges().iter().copied().chain(h.edges().iter().map(|&(u, v)| (u + shift, v + shift)));
    let graph = Graph::new(g.n() + h.n(), edges)?;
    let labels = g.labels().iter().chain(h.labels()).cloned().collect();
    let graph = graph.with_labels(labels)?;
    Ok(Edited { graph, remap: (0..h.n()).map(|v| v + shift).collect() })
}

/// Merges `v` into `u`. The merged vertex keeps `u`'s label and the union
/// of both neighbourhoods; vertices above `v` shift down by one.
///
/// If `u` and `v` are adjacent the edge between them is dropped rather
/// than turned into a loop.
pub fn identify_vertices(g: &Graph, u: Vertex, v: Vertex) -> Result<Edited, GraphError> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    if u == v {
        return Err(GraphError::SameVertex(u));
    }
    let remap: Vec<Vertex> = (0..g.n())
        .map(|w| {
            let w = if w == v { u } else { w };
            if w > v {
                w - 1
            } else {
                w
            }
        })
        .collect();
    let edges = g
        .edges()
        .iter()
        .map(|&(a, b)| (remap[a], remap[b]))
        .filter(|(a, b)| a != b);
    let graph = Graph::new(g.n() - 1, edges)?;
    let labels = (0..g.n()).filter(|&w| w != v).map(|w| g.labels()[w].clone()).collect();
    Ok(Edited { graph: graph.with_labels(labels)?, remap })
}

/// Adds `count` new vertices adjacent to `v` only; they get ids
/// `n..n+count` and no labels.
pub fn attach_pendants(g: &Graph, v: Vertex, count: usize) -> Result<Edited, GraphError> {
    g.check_vertex(v)?;
    let n = g.n();
    let edges = g.edges().iter().copied().chain((n..n + count).map(|p| (v, p)));
    let graph = Graph::new(n + count, edges)?;
    let mut labels = g.labels().to_vec();
    labels.resize(n + count, None);
    Ok(Edited { graph: graph.with_labels(labels)?, remap: (0..n).collect() })
}

/// Subgraph induced by `vertices`, renumbered in the given order. The
/// returned vector maps each new id back to its original vertex.
pub fn induced_subgraph(g: &Graph, vertices: &[Vertex]) -> Result<(Graph, Vec<Vertex>), GraphError> {
    let mut index = vec![usize::MAX; g.n()];
    let mut seen = HashSet::new();
    let mut kept = Vec::new();
    for &v in vertices {
        g.check_vertex(v)?;
        if seen.insert(v) {
            index[v] = kept.len();
            kept.push(v);
        }
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&(a, b)| index[a] != usize::MAX && index[b] != usize::MAX)
        .map(|&(a, b)| (index[a], index[b]));
    let graph = Graph::new(kept.len(), edges)?;
    let labels = kept.iter().map(|&v| g.labels()[v].clone()).collect();
    Ok((graph.with_labels(labels)?, kept))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn union_of_two_edges() {
        let p2 = Graph::new(2, [(0, 1)]).unwrap();
        let out = disjoint_union(&p2, &p2).unwrap();
        assert_eq!((out.graph.n(), out.graph.m()), (4, 2));
        assert_eq!(out.remap, vec![2, 3]);
    }

    #[test]
    fn union_rejects_label_collision() {
        let a = Graph::new(1, []).unwrap().labelled_by(|_| "v".into()).unwrap();
        assert!(matches!(disjoint_union(&a, &a), Err(GraphError::DuplicateLabel(_))));
    }

    #[test]
    fn pendants_on_triangle() {
        let out = attach_pendants(&complete(3), 0, 3).unwrap();
        let g = out.graph;
        assert_eq!(g.n(), 6);
        assert_eq!(g.degree(0), 5);
        assert!((3..6).all(|p| g.neighbors(p) == [0]));
    }

    #[test]
    fn identify_clique_with_cycle() {
        let k4 = complete(4).labelled_by(|i| format!("v_{i}")).unwrap();
        let c5 = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap().labelled_by(|i| format!("u_{i}")).unwrap();
        let union = disjoint_union(&k4, &c5).unwrap();
        let merged = identify_vertices(&union.graph, 0, union.remap[0]).unwrap();
        let g = &merged.graph;
        assert_eq!(g.n(), 8);
        assert_eq!(g.m(), 6 + 5);
        assert_eq!(g.degree(0), 5);
        assert_eq!(g.label(0), Some("v_0"));
        assert_eq!(merged.remap[4], 0);
        assert_eq!(merged.remap[5], 4);
        assert!(g.check_invariants());
    }

    #[test]
    fn identify_adjacent_drops_edge() {
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        let out = identify_vertices(&p3, 0, 1).unwrap();
        assert_eq!(out.graph.edges(), &[(0, 1)]);
        assert_eq!(identify_vertices(&p3, 2, 2), Err(GraphError::SameVertex(2)));
    }

    #[test]
    fn induced_star() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap();
        let (h, back) = induced_subgraph(&g, &[0, 1, 3]).unwrap();
        assert_eq!(h.edges(), &[(0, 1), (0, 2)]);
        assert_eq!(back, vec![0, 1, 3]);
    }
}
