use std::collections::{HashMap, VecDeque};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::flow::FlowNetwork;
use super::{Distance, Graph, GraphError, Vertex};

/// Breadth-first distances from `source`.
pub fn bfs_distances(g: &Graph, source: Vertex) -> Result<Vec<Distance>, GraphError> {
    g.check_vertex(source)?;
    Ok(multi_source_distances(g, [source]))
}

/// Distance from every vertex to the nearest member of `sources`.
///
/// An empty source set yields `Unreachable` everywhere.
pub fn multi_source_distances<I>(g: &Graph, sources: I) -> Vec<Distance>
where
    I: IntoIterator<Item = Vertex>,
{
    let mut dist = vec![Distance::Unreachable; g.n()];
    let mut queue = VecDeque::new();
    for s in sources {
        if dist[s] == Distance::Unreachable {
            dist[s] = Distance::Finite(0);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let Distance::Finite(du) = dist[u] else { unreachable!() };
        for &w in g.neighbors(u) {
            if dist[w] == Distance::Unreachable {
                dist[w] = Distance::Finite(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// `d(v, S) = min { d(v, y) : y in S }`.
pub fn distance_to_set(g: &Graph, v: Vertex, set: &[Vertex]) -> Result<Distance, GraphError> {
    g.check_vertex(v)?;
    if set.is_empty() {
        return Err(GraphError::EmptySet);
    }
    for &s in set {
        g.check_vertex(s)?;
    }
    let dist = bfs_distances(g, v)?;
    Ok(set.iter().map(|&s| dist[s]).min().expect("nonempty"))
}

pub fn all_pairs_distances(g: &Graph) -> Vec<Vec<Distance>> {
    (0..g.n()).map(|s| multi_source_distances(g, [s])).collect()
}

/// Partition of the vertex set by open neighbourhood.
///
/// Two vertices share a class iff they are non-adjacent with identical
/// open neighbourhoods (adjacent vertices can never have equal open
/// neighbourhoods in a simple graph). Classes are sorted and ordered by
/// their smallest member; singletons are included.
pub fn false_twin_classes(g: &Graph) -> Vec<Vec<Vertex>> {
    let mut by_nbhd: HashMap<&[Vertex], Vec<Vertex>> = HashMap::new();
    for v in g.vertices() {
        by_nbhd.entry(g.neighbors(v)).or_default().push(v);
    }
    let mut classes: Vec<Vec<Vertex>> = by_nbhd.into_values().collect();
    classes.sort_unstable_by_key(|c| c[0]);
    classes
}

/// Degree counts `d_i`, their prefix sums, `Δ`, `m`, and the average
/// degree as an exact rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    /// `counts[i]` is the number of vertices of degree exactly `i`.
    pub counts: Vec<usize>,
    /// `prefix[s]` is the number of vertices of degree at most `s`.
    pub prefix: Vec<usize>,
    pub max_degree: usize,
    pub n: usize,
    pub m: usize,
    #[serde(with = "ratio_serde")]
    pub avg_degree: Ratio<u64>,
}

impl DegreeProfile {
    pub fn count(&self, degree: usize) -> usize {
        self.counts.get(degree).copied().unwrap_or(0)
    }

    /// `⌈d⌉`.
    pub fn ceil_avg_degree(&self) -> u64 {
        self.avg_degree.ceil().to_integer()
    }
}

pub fn degree_profile(g: &Graph) -> DegreeProfile {
    let max_degree = g.max_degree();
    let mut counts = vec![0usize; max_degree + 1];
    for v in g.vertices() {
        counts[g.degree(v)] += 1;
    }
    let prefix = counts
        .iter()
        .scan(0usize, |acc, &c| {
            *acc += c;
            Some(*acc)
        })
        .collect();
    DegreeProfile { counts, prefix, max_degree, n: g.n(), m: g.m(), avg_degree: average_degree(g) }
}

/// `2m / n`; zero for the empty graph.
pub fn average_degree(g: &Graph) -> Ratio<u64> {
    if g.n() == 0 {
        Ratio::from_integer(0)
    } else {
        Ratio::new(2 * g.m() as u64, g.n() as u64)
    }
}

/// Exact maximum average degree, i.e. twice the maximum edge density over
/// all nonempty subgraphs.
///
/// Uses Dinkelbach iteration on the densest-subgraph closure network: for
/// the current density `a/b` a min cut decides whether some vertex set `H`
/// has `b·|E(H)| − a·|V(H)| > 0`, and if so `H` supplies the next, strictly
/// larger, density. Densities are ratios with denominator at most `n`, so
/// the iteration terminates.
pub fn max_average_degree(g: &Graph) -> Ratio<u64> {
    if g.m() == 0 {
        return Ratio::from_integer(0);
    }
    let mut best = Ratio::new(g.m() as u64, g.n() as u64);
    loop {
        let (gain, set) = densest_closure(g, *best.numer() as i64, *best.denom() as i64);
        if gain <= 0 {
            return best * 2;
        }
        let mut inside = vec![false; g.n()];
        for &v in &set {
            inside[v] = true;
        }
        let e = g.edges().iter().filter(|&&(u, v)| inside[u] && inside[v]).count();
        let next = Ratio::new(e as u64, set.len() as u64);
        debug_assert!(next > best);
        best = next;
    }
}

/// Max over vertex sets `H` of `b·|E(H)| − a·|V(H)|`, with a maximiser.
fn densest_closure(g: &Graph, a: i64, b: i64) -> (i64, Vec<Vertex>) {
    let m = g.m();
    let n = g.n();
    let source = 0;
    let sink = 1;
    let edge_node = |e: usize| 2 + e;
    let vertex_node = |v: usize| 2 + m + v;
    let mut net = FlowNetwork::new(2 + m + n);
    let inf = b * (m as i64 + 1) + 1;
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        net.add_edge(source, edge_node(e), b);
        net.add_edge(edge_node(e), vertex_node(u), inf);
        net.add_edge(edge_node(e), vertex_node(v), inf);
    }
    for v in 0..n {
        net.add_edge(vertex_node(v), sink, a);
    }
    let flow = net.max_flow(source, sink);
    let gain = b * m as i64 - flow;
    let reach = net.source_side(source);
    let set = (0..n).filter(|&v| reach[vertex_node(v)]).collect();
    (gain, set)
}

/// `m − n + 1`, defined for connected graphs only.
pub fn cycle_rank(g: &Graph) -> Result<usize, GraphError> {
    if g.n() == 0 {
        return Err(GraphError::Empty);
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected);
    }
    Ok(g.m() + 1 - g.n())
}

/// Conservative planarity certificate: true when the graph is planar for a
/// structural reason that needs no embedding (at most four vertices per
/// component, or at most three independent cycles per component, which
/// rules out both Kuratowski subdivisions). `false` means "not certified",
/// not "non-planar".
pub fn is_certainly_planar(g: &Graph) -> bool {
    g.components().iter().all(|comp| {
        let n = comp.len();
        let m = comp.iter().map(|&v| g.degree(v)).sum::<usize>() / 2;
        // cycle rank m - n + 1 at most 3
        n <= 4 || m < n + 3
    })
}

pub(crate) mod ratio_serde {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<u64>, D::Error> {
        let text = String::deserialize(d)?;
        let (a, b) = text.split_once('/').unwrap_or((text.as_str(), "1"));
        let a = a.trim().parse().map_err(serde::de::Error::custom)?;
        let b: u64 = b.trim().parse().map_err(serde::de::Error::custom)?;
        if b == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(a, b))
    }
}
