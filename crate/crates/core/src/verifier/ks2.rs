use std::collections::HashMap;

use serde::Serialize;

use super::VerifyError;
use crate::hypergraph::Hypergraph;

/// A copy of `K(s, 2)`: two vertices and `s` common neighbours.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ks2Witness {
    pub pair: (u32, u32),
    pub common_neighbors: Vec<u32>,
    /// The `2s` edges joining the pair to the common neighbours, ascending.
    pub edge_indices: Vec<usize>,
    /// The `s + 2` vertices, ascending.
    pub vertices: Vec<u32>,
}

pub(crate) fn require_simple_graph(g: &Hypergraph) -> Result<(), VerifyError> {
    if g.r() != 2 {
        return Err(VerifyError::NotAGraph { r: g.r() });
    }
    if !g.is_simple() {
        return Err(VerifyError::NotSimple);
    }
    Ok(())
}

/// Finds the lexicographically first vertex pair with at least `s` common
/// neighbours and returns it with its `s` smallest common neighbours.
///
/// For `k >= 6` and `s = ceil(k / 2)` a hit is `2s >= k` edges on
/// `s + 2 <= k - 1` vertices, so the graph fails the batch condition for `k`.
pub fn detect_ks2(g: &Hypergraph, s: usize) -> Result<Option<Ks2Witness>, VerifyError> {
    require_simple_graph(g)?;
    if s < 2 {
        return Err(VerifyError::InvalidParameter(format!("s must be at least 2, got {s}")));
    }
    let n = g.num_vertices();
    let words = n.div_ceil(64).max(1);
    let mut adj = vec![0u64; n * words];
    let mut index: HashMap<(u32, u32), usize> = HashMap::new();
    for (i, e) in g.edges().iter().enumerate() {
        let (a, b) = (e[0], e[1]);
        adj[a as usize * words + (b / 64) as usize] |= 1 << (b % 64);
        adj[b as usize * words + (a / 64) as usize] |= 1 << (a % 64);
        index.insert((a, b), i);
    }
    let row = |v: usize| &adj[v * words..(v + 1) * words];

    for u in 0..n {
        for v in u + 1..n {
            let common: usize = row(u).iter().zip(row(v)).map(|(a, b)| (a & b).count_ones() as usize).sum();
            if common < s {
                continue;
            }
            let mut picked = Vec::with_capacity(s);
            'words: for (wi, (a, b)) in row(u).iter().zip(row(v)).enumerate() {
                let mut rest = a & b;
                while rest != 0 {
                    picked.push(wi as u32 * 64 + rest.trailing_zeros());
                    if picked.len() == s {
                        break 'words;
                    }
                    rest &= rest - 1;
                }
            }
            let (u, v) = (u as u32, v as u32);
            let key = |a: u32, b: u32| if a < b { (a, b) } else { (b, a) };
            let mut edge_indices: Vec<usize> =
                picked.iter().flat_map(|&w| [index[&key(u, w)], index[&key(v, w)]]).collect();
            edge_indices.sort_unstable();
            let mut vertices = picked.clone();
            vertices.extend([u, v]);
            vertices.sort_unstable();
            return Ok(Some(Ks2Witness { pair: (u, v), common_neighbors: picked, edge_indices, vertices }));
        }
    }
    Ok(None)
}
