//! Deterministic test corpus: small named families, the constructions at
//! small parameters and seeded random connected graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::constructions::{complete, cycle, gap_pair, gpqr, path, star, ConstructionError};
use crate::graph::Graph;
use crate::reduction::build_gstar;

/// Size of the standard corpus.
pub const DEFAULT_SIZE: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub graph: Graph,
}

fn entry(name: impl Into<String>, graph: Graph) -> CorpusEntry {
    CorpusEntry { name: name.into(), graph }
}

/// Members that do not depend on the seed, mandated ones first.
fn fixed_members() -> Result<Vec<CorpusEntry>, ConstructionError> {
    let gap1 = gap_pair(1)?;
    let gap2 = gap_pair(2)?;
    let gstar = build_gstar(&path(3)?).map_err(|e| ConstructionError::Invalid(e.to_string()))?;
    let mut out = vec![
        entry("gpqr_3_3_4", gpqr(3, 3, 4)?.graph),
        entry("gap_g_1", gap1.g),
        entry("gap_h_1", gap1.h),
        entry("gstar_path_3", gstar.graph),
        entry("gpqr_3_4_4", gpqr(3, 4, 4)?.graph),
        entry("gap_g_2", gap2.g),
        entry("gap_h_2", gap2.h),
        entry("path_24", path(24)?),
    ];
    for n in 2..=8 {
        out.push(entry(format!("path_{n}"), path(n)?));
    }
    for n in 3..=8 {
        out.push(entry(format!("cycle_{n}"), cycle(n)?));
    }
    for leaves in 2..=5 {
        out.push(entry(format!("star_{leaves}"), star(leaves)?));
    }
    for p in 3..=4 {
        out.push(entry(format!("complete_{p}"), complete(p)?));
    }
    Ok(out)
}

/// Random spanning tree on `4..=8` vertices plus each remaining pair with
/// a per-graph edge probability.
fn random_connected(rng: &mut ChaCha8Rng) -> Graph {
    let n = rng.gen_range(4..=8);
    let density = rng.gen_range(0.1..0.6);
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for u in 0..n {
        for v in u + 1..n {
            if !edges.contains(&(u, v)) && rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("endpoints are in range")
}

/// The corpus for `seed` with `size` members. The fixed members come first;
/// when `size` is smaller than their number the list is truncated.
pub fn corpus_generate(seed: u64, size: usize) -> Result<Vec<CorpusEntry>, ConstructionError> {
    let mut out = fixed_members()?;
    out.truncate(size);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut index = 1;
    while out.len() < size {
        out.push(entry(format!("random_{index:02}"), random_connected(&mut rng)));
        index += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_sized() {
        let a = corpus_generate(0, DEFAULT_SIZE).unwrap();
        assert_eq!(a.len(), DEFAULT_SIZE);
        assert_eq!(a, corpus_generate(0, DEFAULT_SIZE).unwrap());
        assert_ne!(a, corpus_generate(1, DEFAULT_SIZE).unwrap());
        let names: Vec<&str> = a.iter().map(|e| e.name.as_str()).collect();
        for mandated in ["gpqr_3_3_4", "gap_g_1", "gap_h_1", "gstar_path_3"] {
            assert!(names.contains(&mandated));
        }
        assert!(a.iter().filter(|e| e.name.starts_with("random_")).all(|e| e.graph.is_connected() && e.graph.n() <= 8));
        assert_eq!(corpus_generate(0, 2).unwrap().len(), 2);
    }
}
