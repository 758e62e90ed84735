//! Locating and neighbor-locating colorings of graphs.
//!
//! * [`graph`]: simple graphs, distances, degree profiles, exact maximum
//!   average degree and structural editors.
//! * [`coloring`]: colorings and the proper / locating / neighbor-locating
//!   checkers with deterministic violation witnesses.
//! * [`solve`]: exact chromatic numbers of all three kinds by backtracking.
//! * [`bounds`]: closed-form order bounds and family size formulas.
//! * [`constructions`]: the graph families with prescribed invariants.
//! * [`reduction`]: the gadget graph linking 3-coloring to NL coloring.
//! * [`catalog`]: all small graphs up to isomorphism.
//! * [`corpus`]: the seeded regression corpus.
//! * [`io`]: edge-list, DIMACS and coloring text formats.

pub mod bounds;
pub mod catalog;
pub mod coloring;
pub mod constructions;
pub mod corpus;
pub mod graph;
pub mod io;
pub mod reduction;
pub mod solve;

pub use coloring::{Color, Coloring, Verdict};
pub use graph::{Distance, Graph, GraphError, Vertex};
