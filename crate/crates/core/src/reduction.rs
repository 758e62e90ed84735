//! The gadget graph `G*` that turns proper 3-coloring of a connected graph
//! `G` into neighbor-locating (or locating) `(n+3)`-coloring of `G*`.
//!
//! Layout of `G*` for `G` on `n` vertices (all indices below 0-based):
//! `u_i = i`, `u'_i = n + i`, `x_i = 2n + i`, then per `i` the sets `A_i`
//! (`n - 1` vertices) followed by `B_i` (`n + 2` vertices), then `y_1..y_3`.
//! Labels are 1-based: `u_1`, `u'_1`, `x_1`, `A_1[1]`, `B_1[1]`, `y_1`.

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::coloring::{check_proper, Color, Coloring, Verdict, VerifyError};
use crate::graph::{average_degree, is_certainly_planar, max_average_degree, Graph, GraphError, Vertex};
use crate::solve::{find_proper_coloring, Feasibility, Kind, SolveError};

/// Largest `G*` whose maximum average degree is computed exactly by
/// [`sparsity_report`]; larger ones fall back to the decomposition bound.
pub const MAD_EXACT_LIMIT: usize = 60;

/// Upper bound on `mad(G*)` from splitting `G*` into four sparse pieces
/// (`8 + 4 + 4 + 4`).
pub const MAD_DECOMPOSITION_BOUND: u64 = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("the reduction needs a connected graph")]
    Disconnected,
    #[error("the reduction needs at least two vertices")]
    TooSmall,
    #[error("input is not a proper 3-coloring: {0}")]
    NotThreeColoring(String),
    #[error("coloring of G* is not valid: {0}")]
    InvalidColoring(String),
    #[error("extraction reached an impossible state: {0}")]
    Inconsistent(String),
    #[error("no proper 4-coloring of G found within the budget")]
    Budget,
}

type Result<T> = std::result::Result<T, ReductionError>;

/// What a vertex of `G*` stands for; indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Role {
    Original(usize),
    Copy(usize),
    Hub(usize),
    A(usize, usize),
    B(usize, usize),
    Y(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetMap {
    pub n: usize,
    pub a: Vec<Vec<Vertex>>,
    pub b: Vec<Vec<Vertex>>,
    pub y: [Vertex; 3],
    roles: Vec<Role>,
}

impl GadgetMap {
    fn new(n: usize) -> Self {
        let mut roles: Vec<Role> = (0..n).map(Role::Original).chain((0..n).map(Role::Copy)).chain((0..n).map(Role::Hub)).collect();
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        for i in 0..n {
            let start = roles.len();
            roles.extend((0..n - 1).map(|t| Role::A(i, t)));
            a.push((start..start + n - 1).collect());
            let start = roles.len();
            roles.extend((0..n + 2).map(|t| Role::B(i, t)));
            b.push((start..start + n + 2).collect());
        }
        let y0 = roles.len();
        roles.extend((0..3).map(Role::Y));
        GadgetMap { n, a, b, y: [y0, y0 + 1, y0 + 2], roles }
    }

    pub fn original(&self, i: usize) -> Vertex {
        i
    }

    pub fn copy(&self, i: usize) -> Vertex {
        self.n + i
    }

    pub fn hub(&self, i: usize) -> Vertex {
        2 * self.n + i
    }

    pub fn role(&self, v: Vertex) -> Role {
        self.roles[v]
    }

    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    fn label(&self, v: Vertex) -> String {
        match self.roles[v] {
            Role::Original(i) => format!("u_{}", i + 1),
            Role::Copy(i) => format!("u'_{}", i + 1),
            Role::Hub(i) => format!("x_{}", i + 1),
            Role::A(i, t) => format!("A_{}[{}]", i + 1, t + 1),
            Role::B(i, t) => format!("B_{}[{}]", i + 1, t + 1),
            Role::Y(j) => format!("y_{}", j + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GStar {
    pub graph: Graph,
    pub map: GadgetMap,
}

/// `|V(G*)| = 2n² + 4n + 3`.
pub fn expected_order(n: usize) -> usize {
    2 * n * n + 4 * n + 3
}

/// `|E(G*)| = 7n² - n + 4m`.
pub fn expected_size(n: usize, m: usize) -> usize {
    7 * n * n - n + 4 * m
}

pub fn build_gstar(g: &Graph) -> Result<GStar> {
    let n = g.n();
    if n < 2 {
        return Err(ReductionError::TooSmall);
    }
    if !g.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    let map = GadgetMap::new(n);
    let mut edges = Vec::with_capacity(expected_size(n, g.m()));
    for &(i, j) in g.edges() {
        edges.push((map.original(i), map.original(j)));
        edges.push((map.copy(i), map.copy(j)));
        edges.push((map.copy(i), map.original(j)));
        edges.push((map.original(i), map.copy(j)));
    }
    for i in 0..n {
        let x = map.hub(i);
        for &a in &map.a[i] {
            edges.extend([(x, a), (map.original(i), a), (map.copy(i), a)]);
            edges.extend(map.y.iter().map(|&y| (a, y)));
        }
        edges.extend(map.b[i].iter().map(|&b| (x, b)));
        edges.extend(map.y.iter().map(|&y| (x, y)));
    }
    let graph = Graph::new(map.len(), edges)?;
    let graph = graph.labelled_by(|v| map.label(v))?;
    let out = GStar { graph, map };
    out.check(g)?;
    Ok(out)
}

impl GStar {
    /// Re-derives the count identities and gadget adjacencies.
    pub fn check(&self, g: &Graph) -> Result<()> {
        let (n, map, gs) = (g.n(), &self.map, &self.graph);
        let fail = |what: String| Err(ReductionError::Inconsistent(what));
        if gs.n() != expected_order(n) || gs.m() != expected_size(n, g.m()) {
            return fail(format!("counts ({}, {}) differ from the formulas", gs.n(), gs.m()));
        }
        for i in 0..n {
            let x = map.hub(i);
            let mut expect: Vec<Vertex> = map.a[i].iter().chain(&map.b[i]).chain(&map.y).copied().collect();
            expect.sort_unstable();
            if gs.neighbors(x) != expect.as_slice() {
                return fail(format!("x_{} has the wrong neighbourhood", i + 1));
            }
            for &a in &map.a[i] {
                let mut expect = vec![x, map.original(i), map.copy(i), map.y[0], map.y[1], map.y[2]];
                expect.sort_unstable();
                if gs.neighbors(a) != expect.as_slice() {
                    return fail(format!("{} has the wrong neighbourhood", gs.label(a).unwrap_or("?")));
                }
            }
            if map.b[i].iter().any(|&b| gs.neighbors(b) != [x]) {
                return fail(format!("B_{} is not pendant on x_{}", i + 1, i + 1));
            }
            for &j in g.neighbors(i) {
                if !gs.has_edge(map.copy(i), map.original(j)) || !gs.has_edge(map.original(i), map.copy(j)) {
                    return fail(format!("copy edges missing for u_{} u_{}", i + 1, j + 1));
                }
            }
        }
        if !gs.is_connected() {
            return fail("G* is disconnected".into());
        }
        Ok(())
    }

    /// `c_i = 4 + i` for the 0-based index `i`, i.e. colors `4..=n+3`.
    fn hub_color(i: usize) -> Color {
        4 + i as Color
    }
}

fn three_coloring(g: &Graph, f3: &Coloring) -> Result<()> {
    if f3.len() != g.n() || f3.colors().iter().any(|&c| c > 3) {
        return Err(ReductionError::NotThreeColoring("colors must lie in 1..=3".into()));
    }
    match check_proper(g, f3)? {
        Verdict::Ok => Ok(()),
        Verdict::Violation { u, v } => Err(ReductionError::NotThreeColoring(format!("edge ({u}, {v}) is monochromatic"))),
    }
}

/// Lifts a proper 3-coloring of `G` to an `(n+3)`-coloring of `G*`:
/// originals keep their colors, `u'_i` and `x_i` get `c_i`, `y_j` gets `j`,
/// `A_i` takes `{c_1..c_n} \ {c_i}` and `B_i` takes `{1..n+3} \ {c_i}`,
/// both in increasing order along increasing vertex ids.
pub fn lift_3coloring(g: &Graph, gstar: &GStar, f3: &Coloring) -> Result<Coloring> {
    three_coloring(g, f3)?;
    let n = g.n();
    let map = &gstar.map;
    let mut colors = vec![0 as Color; map.len()];
    for i in 0..n {
        let c = GStar::hub_color(i);
        colors[map.original(i)] = f3.color(i);
        colors[map.copy(i)] = c;
        colors[map.hub(i)] = c;
        let others = (0..n).map(GStar::hub_color).filter(|&h| h != c);
        for (&a, h) in map.a[i].iter().zip(others) {
            colors[a] = h;
        }
        let rest = (1..=n as Color + 3).filter(|&h| h != c);
        for (&b, h) in map.b[i].iter().zip(rest) {
            colors[b] = h;
        }
    }
    for (j, &y) in map.y.iter().enumerate() {
        colors[y] = j as Color + 1;
    }
    let lifted = Coloring::new(colors, n as Color + 3).expect("colors lie in 1..=n+3");
    match crate::coloring::check_nl(&gstar.graph, &lifted)? {
        Verdict::Ok => Ok(lifted),
        Verdict::Violation { u, v } => {
            Err(ReductionError::Inconsistent(format!("lifted coloring leaves {u} and {v} indistinguishable")))
        }
    }
}

/// Recovers a proper 3-coloring of `G` from a neighbor-locating
/// (`mode = NeighborLocating`) or locating (`mode = Locating`)
/// `(n+3)`-coloring of `G*`.
///
/// Colors are renamed so that `y_j` has `j` and `x_i` has `c_i`; then
/// `u_i` keeps its color if it is in `1..=3` and otherwise takes the color
/// of `u'_i`.
pub fn extract_3coloring(g: &Graph, gstar: &GStar, f: &Coloring, mode: Kind) -> Result<Coloring> {
    let n = g.n();
    let map = &gstar.map;
    if f.k() as usize > n + 3 {
        return Err(ReductionError::InvalidColoring(format!("palette has {} > n + 3 colors", f.k())));
    }
    if mode == Kind::Proper {
        return Err(ReductionError::InvalidColoring("extraction needs a locating or neighbor-locating coloring".into()));
    }
    if !mode.verify(&gstar.graph, f)? {
        return Err(ReductionError::InvalidColoring(format!("not a {mode} coloring of G*")));
    }
    let mut rename = vec![0 as Color; f.k() as usize + 1];
    let anchors = map.y.iter().enumerate().map(|(j, &y)| (y, j as Color + 1)).chain((0..n).map(|i| (map.hub(i), GStar::hub_color(i))));
    for (v, target) in anchors {
        let slot = &mut rename[f.color(v) as usize];
        if *slot != 0 {
            return Err(ReductionError::Inconsistent(format!("{} repeats a color of Y ∪ X", gstar.graph.label(v).unwrap_or("?"))));
        }
        *slot = target;
    }
    let mut colors = Vec::with_capacity(n);
    for i in 0..n {
        let own = rename[f.color(map.original(i)) as usize];
        let c = if (1..=3).contains(&own) { own } else { rename[f.color(map.copy(i)) as usize] };
        if !(1..=3).contains(&c) {
            return Err(ReductionError::Inconsistent(format!("neither u_{} nor u'_{} has a color of Y", i + 1, i + 1)));
        }
        colors.push(c);
    }
    let f3 = Coloring::new(colors, 3).expect("colors lie in 1..=3");
    match check_proper(g, &f3)? {
        Verdict::Ok => Ok(f3),
        Verdict::Violation { u, v } => Err(ReductionError::Inconsistent(format!("extracted coloring has monochromatic edge ({u}, {v})"))),
    }
}

/// Extends a proper 4-coloring of `G` (found by search) to `G*`: `u'_i`
/// copies `u_i`; `x_i` gets 1 if `u_i` has color 1 and 2 otherwise; `A_i`
/// and `B_i` get the other of `{1, 2}`; `Y` gets 3.
pub fn four_partition(g: &Graph, gstar: &GStar, budget: u64) -> Result<Coloring> {
    let f4 = match find_proper_coloring(g, 4, budget)?.outcome {
        Feasibility::Feasible(f) => f,
        Feasibility::Infeasible | Feasibility::BudgetExceeded => return Err(ReductionError::Budget),
    };
    let map = &gstar.map;
    let mut colors = vec![0 as Color; map.len()];
    for i in 0..g.n() {
        let c = f4.color(i);
        colors[map.original(i)] = c;
        colors[map.copy(i)] = c;
        let hub = if c == 1 { 1 } else { 2 };
        colors[map.hub(i)] = hub;
        for &v in map.a[i].iter().chain(&map.b[i]) {
            colors[v] = 3 - hub;
        }
    }
    for &y in &map.y {
        colors[y] = 3;
    }
    let f = Coloring::new(colors, 4).expect("colors lie in 1..=4");
    match check_proper(&gstar.graph, &f)? {
        Verdict::Ok => Ok(f),
        Verdict::Violation { u, v } => Err(ReductionError::Inconsistent(format!("edge ({u}, {v}) is monochromatic"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MadSource {
    Exact,
    Decomposition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SparsityReport {
    /// `G` is certified planar with maximum degree at most 4, the setting
    /// in which the two bounds below are claimed.
    pub hypothesis: bool,
    #[serde(with = "crate::graph::ratio_serde")]
    pub avg_degree: Ratio<u64>,
    pub avg_degree_at_most_7: bool,
    #[serde(with = "crate::graph::ratio_serde")]
    pub mad_bound: Ratio<u64>,
    pub mad_source: MadSource,
    pub mad_at_most_20: bool,
    pub four_colorable: bool,
}

pub fn sparsity_report(g: &Graph, gstar: &GStar, budget: u64) -> Result<SparsityReport> {
    let avg = average_degree(&gstar.graph);
    let (mad_bound, mad_source) = if gstar.graph.n() <= MAD_EXACT_LIMIT {
        (max_average_degree(&gstar.graph), MadSource::Exact)
    } else {
        (Ratio::from_integer(MAD_DECOMPOSITION_BOUND), MadSource::Decomposition)
    };
    let four_colorable = match four_partition(g, gstar, budget) {
        Ok(_) => true,
        Err(ReductionError::Budget) => false,
        Err(e) => return Err(e),
    };
    Ok(SparsityReport {
        hypothesis: is_certainly_planar(g) && g.max_degree() <= 4,
        avg_degree: avg,
        avg_degree_at_most_7: avg <= Ratio::from_integer(7),
        mad_bound,
        mad_source,
        mad_at_most_20: mad_bound <= Ratio::from_integer(MAD_DECOMPOSITION_BOUND),
        four_colorable,
    })
}
