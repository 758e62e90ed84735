//! Backtracking search for a coloring with at most `k` colors.
//!
//! The engine branches on the uncolored vertex with the fewest admissible
//! colors (or, on request, in a fixed degree order) and prunes with:
//! * adjacency and twin conflicts (false twins need distinct colors in
//!   both locating variants);
//! * first-use symmetry breaking: a vertex may only open color
//!   `max_used + 1`;
//! * for NL search, signature freezing: once a vertex and all its
//!   neighbours are colored its pair `(f(v), N_f(v))` is final and must
//!   not repeat;
//! * for NL search, signature counting: non-isolated vertices need
//!   distinct pairs with `1 ≤ |N_f(v)| ≤ deg(v)`, so for every `s` the
//!   vertices whose signature size is bounded by `s` cannot outnumber the
//!   available pairs, both overall and per color;
//! * for locating search, settled distances: `d(x, S_i)` is known once the
//!   nearest colored `i`-vertex is no farther than the first uncolored
//!   vertex, and two same-colored vertices with all distances settled and
//!   equal can never be separated.

use std::collections::HashSet;

use super::Kind;
use crate::bounds::binomial;
use crate::coloring::Color;
use crate::graph::{bfs_distances, Distance, Graph, Vertex};

/// How the next vertex to branch on is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexOrder {
    /// Fixed order: descending degree, ties by id.
    Degree,
    /// Fewest admissible colors first, then descending degree, then id.
    FewestColors,
}

pub(crate) enum Outcome {
    Found(Vec<Color>),
    Exhausted,
    OutOfBudget,
}

enum Trail {
    Colored(Vertex),
    Frozen { v: Vertex, old_bucket: usize },
}

pub(crate) struct Engine<'g> {
    g: &'g Graph,
    kind: Kind,
    k: usize,
    order: Vec<Vertex>,
    strategy: VertexOrder,
    twins: Vec<Vec<Vertex>>,
    by_distance: Vec<Vec<(u32, Vertex)>>,
    color: Vec<Color>,
    nbr_count: Vec<u32>,
    nbr_mask: Vec<u64>,
    uncolored_nbrs: Vec<usize>,
    frozen: HashSet<(Color, u64)>,
    // Signature-size bucket of each vertex, clipped to 1..=top; 0 = isolated.
    bucket: Vec<usize>,
    top: usize,
    hist_all: Vec<u128>,
    hist_color: Vec<Vec<u128>>,
    cap_all: Vec<u128>,
    cap_color: Vec<u128>,
    trail: Vec<Trail>,
    max_used: Color,
    nodes: u64,
    budget: u64,
}

impl<'g> Engine<'g> {
    /// `preassigned` vertices must be pairwise forced distinct (a clique
    /// or a twin class) so that giving them `1..=t` loses no generality.
    pub fn new(
        g: &'g Graph,
        kind: Kind,
        k: usize,
        twins: Vec<Vec<Vertex>>,
        preassigned: &[Vertex],
        strategy: VertexOrder,
        budget: u64,
    ) -> Self {
        let n = g.n();
        let mut rest: Vec<Vertex> = g.vertices().filter(|v| !preassigned.contains(v)).collect();
        rest.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let order = preassigned.iter().copied().chain(rest).collect();

        let by_distance = if kind == Kind::Locating {
            g.vertices()
                .map(|x| {
                    let dist = bfs_distances(g, x).expect("vertex in range");
                    let mut row: Vec<(u32, Vertex)> = dist
                        .iter()
                        .enumerate()
                        .filter_map(|(y, d)| match d {
                            Distance::Finite(d) => Some((*d, y)),
                            Distance::Unreachable => None,
                        })
                        .collect();
                    row.sort_unstable();
                    row
                })
                .collect()
        } else {
            Vec::new()
        };

        let top = k.saturating_sub(1).max(1);
        let bucket: Vec<usize> = g.vertices().map(|v| g.degree(v).min(top)).collect();
        let mut hist_all = vec![0u128; top + 1];
        for &b in &bucket {
            hist_all[b] += 1;
        }
        let per_color = |s: usize| -> u128 {
            (1..=s as u64).map(|i| binomial(k.saturating_sub(1) as u64, i).unwrap_or(u128::MAX)).fold(0u128, u128::saturating_add)
        };
        let cap_color: Vec<u128> = (0..=top).map(per_color).collect();
        let cap_all = cap_color.iter().map(|c| c.saturating_mul(k as u128)).collect();

        Engine {
            g,
            kind,
            k,
            order,
            strategy,
            twins,
            by_distance,
            color: vec![0; n],
            nbr_count: vec![0; n * (k + 1)],
            nbr_mask: vec![0; n],
            uncolored_nbrs: g.vertices().map(|v| g.degree(v)).collect(),
            frozen: HashSet::new(),
            bucket,
            top,
            hist_all,
            hist_color: vec![vec![0; top + 1]; k + 1],
            cap_all,
            cap_color,
            trail: Vec::new(),
            max_used: 0,
            nodes: 0,
            budget,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    pub fn run(&mut self, preassigned: usize) -> Outcome {
        if self.kind == Kind::NeighborLocating && !self.counts_fit(None) {
            return Outcome::Exhausted;
        }
        for depth in 0..preassigned {
            let v = self.order[depth];
            let c = depth as Color + 1;
            if c as usize > self.k || self.conflicts(v, c) || !self.assign(v, c) {
                return Outcome::Exhausted;
            }
            self.max_used = c;
        }
        self.search(preassigned)
    }

    fn next_vertex(&self, depth: usize) -> Vertex {
        match self.strategy {
            VertexOrder::Degree => self.order[depth],
            VertexOrder::FewestColors => {
                let top = (self.max_used as usize + 1).min(self.k) as Color;
                let mut best = (usize::MAX, 0, 0);
                for v in self.g.vertices().filter(|&v| self.color[v] == 0) {
                    let free = (1..=top).filter(|&c| !self.conflicts(v, c)).count();
                    let key = (free, usize::MAX - self.g.degree(v), v);
                    if key < best {
                        best = key;
                    }
                }
                best.2
            }
        }
    }

    fn search(&mut self, depth: usize) -> Outcome {
        if depth == self.order.len() {
            return if self.leaf_ok() { Outcome::Found(self.color.clone()) } else { Outcome::Exhausted };
        }
        let v = self.next_vertex(depth);
        let top = (self.max_used as usize + 1).min(self.k) as Color;
        for c in 1..=top {
            if self.conflicts(v, c) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Outcome::OutOfBudget;
            }
            let mark = self.trail.len();
            let saved = self.max_used;
            if self.assign(v, c) {
                self.max_used = saved.max(c);
                match self.search(depth + 1) {
                    Outcome::Exhausted => {}
                    other => return other,
                }
            }
            self.undo_to(mark);
            self.max_used = saved;
        }
        Outcome::Exhausted
    }

    fn conflicts(&self, v: Vertex, c: Color) -> bool {
        self.nbr_count[v * (self.k + 1) + c as usize] > 0 || self.twins[v].iter().any(|&u| self.color[u] == c)
    }

    /// Colors `v` and runs the incremental checks. On failure the caller
    /// must still undo to its mark.
    fn assign(&mut self, v: Vertex, c: Color) -> bool {
        self.color[v] = c;
        self.trail.push(Trail::Colored(v));
        let width = self.k + 1;
        for &u in self.g.neighbors(v) {
            let slot = &mut self.nbr_count[u * width + c as usize];
            *slot += 1;
            if *slot == 1 {
                self.nbr_mask[u] |= 1 << c;
            }
            self.uncolored_nbrs[u] -= 1;
        }
        self.hist_color[c as usize][self.bucket[v]] += 1;
        match self.kind {
            Kind::Proper => true,
            Kind::NeighborLocating => self.freeze_around(v) && self.counts_fit(Some(c)),
            Kind::Locating => self.settled_distances_distinct(),
        }
    }

    fn freeze_around(&mut self, v: Vertex) -> bool {
        if self.uncolored_nbrs[v] == 0 && !self.freeze(v) {
            return false;
        }
        for i in 0..self.g.degree(v) {
            let u = self.g.neighbors(v)[i];
            if self.color[u] != 0 && self.uncolored_nbrs[u] == 0 && !self.freeze(u) {
                return false;
            }
        }
        true
    }

    fn freeze(&mut self, v: Vertex) -> bool {
        let key = (self.color[v], self.nbr_mask[v]);
        if !self.frozen.insert(key) {
            return false;
        }
        let old_bucket = self.bucket[v];
        if old_bucket > 0 {
            let size = (self.nbr_mask[v].count_ones() as usize).min(self.top);
            self.move_bucket(v, old_bucket, size);
        }
        self.trail.push(Trail::Frozen { v, old_bucket });
        true
    }

    fn move_bucket(&mut self, v: Vertex, from: usize, to: usize) {
        let c = self.color[v] as usize;
        self.hist_all[from] -= 1;
        self.hist_all[to] += 1;
        self.hist_color[c][from] -= 1;
        self.hist_color[c][to] += 1;
        self.bucket[v] = to;
    }

    /// Every non-isolated vertex needs its own pair `(color, N)` with
    /// `1 ≤ |N| ≤ bucket`; the count per prefix of bucket sizes cannot
    /// exceed the number of such pairs.
    fn counts_fit(&self, color: Option<Color>) -> bool {
        let mut all = 0u128;
        let mut one = 0u128;
        for s in 1..=self.top {
            all += self.hist_all[s];
            if all > self.cap_all[s] {
                return false;
            }
            if let Some(c) = color {
                one += self.hist_color[c as usize][s];
                if one > self.cap_color[s] {
                    return false;
                }
            }
        }
        true
    }

    fn settled_distances_distinct(&self) -> bool {
        if (self.max_used as usize) < self.k - 1 {
            return true;
        }
        let mut seen: HashSet<(Color, Vec<u32>)> = HashSet::new();
        let mut dist = vec![u32::MAX; self.k];
        for x in self.g.vertices() {
            if self.color[x] == 0 {
                continue;
            }
            dist.fill(u32::MAX);
            let mut settled = 0;
            let mut limit = u32::MAX;
            for &(d, y) in &self.by_distance[x] {
                if d > limit {
                    break;
                }
                let cy = self.color[y];
                if cy == 0 {
                    limit = d;
                } else if dist[cy as usize - 1] == u32::MAX {
                    dist[cy as usize - 1] = d;
                    settled += 1;
                    if settled == self.k {
                        break;
                    }
                }
            }
            if settled == self.k && !seen.insert((self.color[x], dist.clone())) {
                return false;
            }
        }
        true
    }

    fn leaf_ok(&self) -> bool {
        match self.kind {
            // Every vertex is frozen at a leaf, so distinctness was already enforced.
            Kind::Proper | Kind::NeighborLocating => true,
            Kind::Locating => {
                let f = crate::coloring::Coloring::from_colors(self.color.clone()).expect("colors are 1-based");
                matches!(crate::coloring::check_locating(self.g, &f), Ok(v) if v.is_ok())
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        let width = self.k + 1;
        while self.trail.len() > mark {
            match self.trail.pop().expect("trail above mark") {
                Trail::Frozen { v, old_bucket } => {
                    self.frozen.remove(&(self.color[v], self.nbr_mask[v]));
                    let current = self.bucket[v];
                    if old_bucket > 0 {
                        self.move_bucket(v, current, old_bucket);
                    }
                }
                Trail::Colored(v) => {
                    let c = self.color[v];
                    for &u in self.g.neighbors(v) {
                        let slot = &mut self.nbr_count[u * width + c as usize];
                        *slot -= 1;
                        if *slot == 0 {
                            self.nbr_mask[u] &= !(1 << c);
                        }
                        self.uncolored_nbrs[u] += 1;
                    }
                    self.hist_color[c as usize][self.bucket[v]] -= 1;
                    self.color[v] = 0;
                }
            }
        }
    }
}
