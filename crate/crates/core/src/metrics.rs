//! Girth of simple graphs and the batch parameter a girth value certifies.
//!
//! A graph with `k >= 6` edges on at most `k - 1` vertices has girth at most
//! `floor(2k / 3)`, so a graph of girth `g` has no violation for any
//! `k <= floor((3g - 1) / 2)`.

use std::collections::VecDeque;

use rayon::prelude::*;
use thiserror::Error;

use crate::hypergraph::Hypergraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MetricsError {
    #[error("girth needs a 2-uniform hypergraph, got r = {r}")]
    NotAGraph { r: usize },
    #[error("girth needs a simple graph; edge {edge} repeats an earlier edge")]
    RepeatedEdge { edge: usize },
    #[error("girth value must be at least 3, got {0}")]
    GirthTooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Girth {
    /// No cycle at all.
    Acyclic,
    /// A shortest cycle, listed as `length` distinct vertices in cyclic order.
    Cycle { length: usize, cycle: Vec<u32> },
}

impl Girth {
    pub fn length(&self) -> Option<usize> {
        match self {
            Girth::Acyclic => None,
            Girth::Cycle { length, .. } => Some(*length),
        }
    }

    pub fn cycle(&self) -> Option<&[u32]> {
        match self {
            Girth::Acyclic => None,
            Girth::Cycle { cycle, .. } => Some(cycle),
        }
    }
}

fn adjacency(g: &Hypergraph) -> Result<Vec<Vec<u32>>, MetricsError> {
    if g.r() != 2 {
        return Err(MetricsError::NotAGraph { r: g.r() });
    }
    let mut adj = vec![Vec::new(); g.num_vertices()];
    let mut seen = std::collections::HashSet::new();
    for (i, e) in g.edges().iter().enumerate() {
        if !seen.insert((e[0], e[1])) {
            return Err(MetricsError::RepeatedEdge { edge: i });
        }
        adj[e[0] as usize].push(e[1]);
        adj[e[1] as usize].push(e[0]);
    }
    Ok(adj)
}

/// Below this many vertices the per-root searches run sequentially.
const PARALLEL_GIRTH_VERTICES: usize = 256;

struct Closing {
    length: usize,
    root: u32,
    a: u32,
    b: u32,
}

/// BFS from `root`; the shortest closed walk through a non-tree edge.
/// Stops expanding once no shorter cycle can be found from this root.
fn shortest_closing(adj: &[Vec<u32>], root: u32, bound: usize) -> Option<Closing> {
    let n = adj.len();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![u32::MAX; n];
    let mut queue = VecDeque::new();
    dist[root as usize] = 0;
    queue.push_back(root);
    let mut best: Option<Closing> = None;
    while let Some(u) = queue.pop_front() {
        let du = dist[u as usize];
        let limit = best.as_ref().map_or(bound, |b| b.length);
        if 2 * du + 1 >= limit {
            break;
        }
        for &w in &adj[u as usize] {
            if dist[w as usize] == usize::MAX {
                dist[w as usize] = du + 1;
                parent[w as usize] = u;
                queue.push_back(w);
            } else if parent[u as usize] != w {
                let length = du + dist[w as usize] + 1;
                if best.as_ref().map_or(length < bound, |b| length < b.length) {
                    best = Some(Closing { length, root, a: u, b: w });
                }
            }
        }
    }
    best
}

fn path_to_root(adj_len: usize, parents: &[u32], mut v: u32) -> Vec<u32> {
    let mut out = vec![v];
    while parents[v as usize] != u32::MAX {
        v = parents[v as usize];
        out.push(v);
        debug_assert!(out.len() <= adj_len);
    }
    out
}

fn bfs_parents(adj: &[Vec<u32>], root: u32) -> Vec<u32> {
    let mut parent = vec![u32::MAX; adj.len()];
    let mut seen = vec![false; adj.len()];
    seen[root as usize] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u as usize] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                parent[w as usize] = u;
                queue.push_back(w);
            }
        }
    }
    parent
}

/// Length of a shortest cycle, by a breadth-first search from every vertex,
/// together with one shortest cycle.
pub fn girth(g: &Hypergraph) -> Result<Girth, MetricsError> {
    let adj = adjacency(g)?;
    let n = adj.len() as u32;
    // Ties go to the smallest root, so both paths give the same answer.
    let probe = |root| shortest_closing(&adj, root, usize::MAX);
    let best = if adj.len() >= PARALLEL_GIRTH_VERTICES {
        (0..n).into_par_iter().filter_map(probe).min_by_key(|c| (c.length, c.root))
    } else {
        (0..n).filter_map(probe).min_by_key(|c| (c.length, c.root))
    };
    let Some(best) = best else {
        return Ok(Girth::Acyclic);
    };
    let parents = bfs_parents(&adj, best.root);
    // At the global minimum the two tree paths meet only at the root, so
    // root .. a followed by b .. (child of root) is a simple cycle.
    let mut cycle = path_to_root(adj.len(), &parents, best.a);
    cycle.reverse();
    let back = path_to_root(adj.len(), &parents, best.b);
    cycle.extend_from_slice(&back[..back.len() - 1]);
    debug_assert_eq!(cycle.len(), best.length);
    Ok(Girth::Cycle { length: best.length, cycle })
}

/// Largest `k` certified by girth `g`: `floor((3g - 1) / 2)`.
pub fn max_k_certified(girth_value: usize) -> Result<usize, MetricsError> {
    if girth_value < 3 {
        return Err(MetricsError::GirthTooSmall(girth_value));
    }
    Ok((3 * girth_value - 1) / 2)
}

/// The certificate for a computed girth; `None` means every `k` is certified.
pub fn certified_k(g: &Girth) -> Option<usize> {
    g.length().map(|len| (3 * len - 1) / 2)
}
