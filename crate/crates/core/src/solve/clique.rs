//! Maximum clique by bitset branch and bound, plus DSATUR for upper bounds.

use crate::coloring::Color;
use crate::graph::{Graph, Vertex};

fn bit(v: Vertex) -> (usize, u64) {
    (v / 64, 1u64 << (v % 64))
}

fn intersect(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn members(set: &[u64]) -> impl Iterator<Item = Vertex> + '_ {
    set.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let b = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(w * 64 + b)
        })
    })
}

fn count(set: &[u64]) -> usize {
    set.iter().map(|w| w.count_ones() as usize).sum()
}

/// Largest clique found within `budget` branch nodes among `candidates`
/// (all vertices when `None`). The result is always a clique; it is a
/// maximum one when the second component is true.
pub(crate) fn max_clique(g: &Graph, candidates: Option<&[Vertex]>, budget: u64) -> (Vec<Vertex>, bool) {
    let rows = g.adjacency_bits();
    let words = g.n().div_ceil(64);
    let mut start = vec![0u64; words];
    match candidates {
        Some(cs) => cs.iter().for_each(|&v| {
            let (w, b) = bit(v);
            start[w] |= b;
        }),
        None => g.vertices().for_each(|v| {
            let (w, b) = bit(v);
            start[w] |= b;
        }),
    }
    let mut search = CliqueSearch { rows: &rows, best: Vec::new(), nodes: 0, budget, exhausted: false };
    let mut current = Vec::new();
    search.expand(&mut current, start);
    (search.best, !search.exhausted)
}

struct CliqueSearch<'a> {
    rows: &'a [Vec<u64>],
    best: Vec<Vertex>,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, current: &mut Vec<Vertex>, mut cand: Vec<u64>) {
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        // Highest-degree-within-candidates first tends to find big cliques early.
        let mut order: Vec<Vertex> = members(&cand).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(count(&intersect(&self.rows[v], &cand))));
        for v in order {
            if current.len() + count(&cand) <= self.best.len() {
                return;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted = true;
                return;
            }
            let (w, b) = bit(v);
            if cand[w] & b == 0 {
                continue;
            }
            current.push(v);
            self.expand(current, intersect(&self.rows[v], &cand));
            current.pop();
            cand[w] &= !b;
            if self.exhausted {
                return;
            }
        }
    }
}

/// DSATUR greedy coloring; returns colors `1..=k` per vertex.
pub(crate) fn dsatur(g: &Graph) -> Vec<Color> {
    let n = g.n();
    let mut color = vec![0 as Color; n];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); n];
    let mut saturation = vec![0usize; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == 0)
            .max_by_key(|&v| (saturation[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("an uncolored vertex remains");
        let c = (1..).find(|&c| !seen[v].get(c as usize).copied().unwrap_or(false)).unwrap();
        color[v] = c;
        for &u in g.neighbors(v) {
            let s = &mut seen[u];
            if s.len() <= c as usize {
                s.resize(c as usize + 1, false);
            }
            if !s[c as usize] {
                s[c as usize] = true;
                saturation[u] += 1;
            }
        }
    }
    color
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{check_proper, Coloring};

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn cliques() {
        assert_eq!(max_clique(&complete(5), None, 1000).0.len(), 5);
        let c5 = Graph::new(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert_eq!(max_clique(&c5, None, 1000), (max_clique(&c5, None, 1000).0, true));
        assert_eq!(max_clique(&c5, None, 1000).0.len(), 2);
        assert!(max_clique(&Graph::empty(0), None, 10).0.is_empty());
        assert_eq!(max_clique(&complete(6), Some(&[1, 3, 5]), 100).0, vec![1, 3, 5]);
    }

    #[test]
    fn dsatur_is_proper() {
        let c7 = Graph::new(7, (0..7).map(|i| (i, (i + 1) % 7))).unwrap();
        let f = Coloring::from_colors(dsatur(&c7)).unwrap();
        assert!(check_proper(&c7, &f).unwrap().is_ok());
        assert_eq!(f.k(), 3);
        assert_eq!(dsatur(&complete(4)).iter().max(), Some(&4));
    }
}
