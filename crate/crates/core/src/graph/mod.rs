//! Simple undirected graphs on the vertex set `0..n`.
//!
//! A [`Graph`] is immutable once built. Every editor in [`edit`] returns a
//! fresh graph together with the id remapping it applied, and all metric
//! queries in [`metrics`] are pure functions.

mod edit;
pub(crate) mod flow;
mod metrics;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use edit::{attach_pendants, disjoint_union, identify_vertices, induced_subgraph, Edited};
pub use metrics::{
    all_pairs_distances, average_degree, bfs_distances, cycle_rank, degree_profile,
    distance_to_set, false_twin_classes, is_certainly_planar, max_average_degree,
    multi_source_distances, DegreeProfile,
};
pub(crate) use metrics::ratio_serde;

pub type Vertex = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("distance to an empty vertex set is undefined")]
    EmptySet,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("label {0:?} is used by more than one vertex")]
    DuplicateLabel(String),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("cannot identify vertex {0} with itself")]
    SameVertex(Vertex),
    #[error("graph has no vertices")]
    Empty,
}

/// Shortest-path distance with an explicit marker for unreachable pairs.
///
/// `Unreachable` compares greater than every finite distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Distance {
    Finite(u32),
    Unreachable,
}

impl Distance {
    pub fn finite(self) -> Option<u32> {
        match self {
            Distance::Finite(d) => Some(d),
            Distance::Unreachable => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Distance::Finite(_))
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(d) => write!(f, "{d}"),
            Distance::Unreachable => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<Vec<Vertex>>,
    /// Sorted, each pair stored as `(u, v)` with `u < v`.
    edges: Vec<(Vertex, Vertex)>,
    labels: Vec<Option<String>>,
}

impl Graph {
    /// Builds a simple graph. Duplicate pairs (in either orientation)
    /// collapse to one edge; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn new<I>(n: usize, edge_list: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut edges = Vec::new();
        for (u, v) in edge_list {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        edges.dedup();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, adj, edges, labels: vec![None; n] })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, adj: vec![Vec::new(); n], edges: Vec::new(), labels: vec![None; n] }
    }

    /// Attaches per-vertex labels. `Some` labels must be pairwise distinct.
    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount { expected: self.n, got: labels.len() });
        }
        let mut seen = HashSet::new();
        for l in labels.iter().flatten() {
            if !seen.insert(l.as_str()) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = labels;
        Ok(self)
    }

    /// Convenience for labelling every vertex from a closure.
    pub fn labelled_by<F>(self, mut f: F) -> Result<Self, GraphError>
    where
        F: FnMut(Vertex) -> String,
    {
        let labels = (0..self.n).map(|v| Some(f(v))).collect();
        self.with_labels(labels)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(v).and_then(|l| l.as_deref())
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn has_labels(&self) -> bool {
        self.labels.iter().any(Option::is_some)
    }

    /// Vertex carrying `label`, if any.
    pub fn find_label(&self, label: &str) -> Option<Vertex> {
        self.labels.iter().position(|l| l.as_deref() == Some(label))
    }

    /// Label lookup table for graphs that are addressed by name repeatedly.
    pub fn label_index(&self) -> HashMap<String, Vertex> {
        self.labels
            .iter()
            .enumerate()
            .filter_map(|(v, l)| l.clone().map(|l| (l, v)))
            .collect()
    }

    pub(crate) fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph and single vertices count as connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Adjacency-bitset view: row `v` has bit `w` set iff `vw` is an edge.
    pub fn adjacency_bits(&self) -> Vec<Vec<u64>> {
        let words = self.n.div_ceil(64);
        let mut rows = vec![vec![0u64; words]; self.n];
        for &(u, v) in &self.edges {
            rows[u][v / 64] |= 1 << (v % 64);
            rows[v][u / 64] |= 1 << (u % 64);
        }
        rows
    }

    /// Handshake lemma, symmetry, simplicity and label uniqueness.
    pub fn check_invariants(&self) -> bool {
        let degree_sum: usize = self.adj.iter().map(Vec::len).sum();
        if degree_sum != 2 * self.m() || self.labels.len() != self.n || self.adj.len() != self.n {
            return false;
        }
        for v in 0..self.n {
            let list = &self.adj[v];
            if list.windows(2).any(|w| w[0] >= w[1]) || list.contains(&v) {
                return false;
            }
            if list.iter().any(|&w| w >= self.n || self.adj[w].binary_search(&v).is_err()) {
                return false;
            }
        }
        let mut seen = HashSet::new();
        self.labels.iter().flatten().all(|l| seen.insert(l))
    }
}
