//! Systems of distinct representatives via augmenting paths on the
//! edge-vertex incidence graph.

use crate::hypergraph::Hypergraph;

/// Returns one representative vertex per edge, pairwise distinct and each
/// lying in its edge, or `None` if no such assignment exists.
pub fn distinct_representatives(h: &Hypergraph) -> Option<Vec<u32>> {
    let m = h.num_edges();
    let n = h.num_vertices();
    if m > n {
        return None;
    }
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut visited = vec![0usize; n];
    for e in 0..m {
        // `visited[v] == stamp` marks vertices already tried in this round.
        let stamp = e + 1;
        if !augment(h, e, stamp, &mut visited, &mut owner) {
            return None;
        }
    }
    let mut rep = vec![0u32; m];
    for (v, o) in owner.iter().enumerate() {
        if let Some(e) = o {
            rep[*e] = v as u32;
        }
    }
    Some(rep)
}

fn augment(
    h: &Hypergraph,
    e: usize,
    stamp: usize,
    visited: &mut [usize],
    owner: &mut [Option<usize>],
) -> bool {
    for &v in h.edge(e) {
        let v = v as usize;
        if visited[v] == stamp {
            continue;
        }
        visited[v] = stamp;
        let free = match owner[v] {
            None => true,
            Some(other) => augment(h, other, stamp, visited, owner),
        };
        if free {
            owner[v] = Some(e);
            return true;
        }
    }
    false
}

/// True iff every edge can be given its own vertex. Such a hypergraph
/// satisfies the batch condition for every `k`.
pub fn sdr_exists(h: &Hypergraph) -> bool {
    distinct_representatives(h).is_some()
}
