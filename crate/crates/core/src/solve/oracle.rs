//! Exhaustive enumeration oracle, independent of the search engine's pruning.

use super::{Kind, SolveError};
use crate::coloring::{Color, Coloring};
use crate::graph::Graph;

/// Largest `k^n` the oracle will enumerate.
pub const ORACLE_LIMIT: u128 = 100_000_000;

/// Whether `g` has a `kind` coloring with at most `k` colors, decided by
/// enumerating every assignment in `{1..k}^n` (skipping only extensions of
/// monochromatic edges) and running the verifier on each.
pub fn brute_force_oracle(g: &Graph, k: usize, kind: Kind) -> Result<bool, SolveError> {
    let n = g.n();
    let space = u32::try_from(n).ok().and_then(|e| (k as u128).checked_pow(e));
    if space.is_none_or(|s| s > ORACLE_LIMIT) {
        return Err(SolveError::OracleLimit { n, k });
    }
    if kind == Kind::Locating && !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    if n == 0 {
        return Ok(true);
    }
    let mut colors = vec![0 as Color; n];
    Ok(extend(g, k as Color, kind, &mut colors, 0))
}

fn extend(g: &Graph, k: Color, kind: Kind, colors: &mut [Color], v: usize) -> bool {
    if v == colors.len() {
        let f = Coloring::from_colors(colors.to_vec()).expect("colors are 1-based").compress();
        return kind.verify(g, &f).unwrap_or(false);
    }
    for c in 1..=k {
        if g.neighbors(v).iter().any(|&u| u < v && colors[u] == c) {
            continue;
        }
        colors[v] = c;
        if extend(g, k, kind, colors, v + 1) {
            return true;
        }
    }
    colors[v] = 0;
    false
}
