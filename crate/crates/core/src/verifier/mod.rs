//! Deciding the batch condition: every `i <= k` edges span at least `i`
//! vertices.
//!
//! When the condition fails the verifier returns a minimal witness, `j`
//! edges spanning exactly `j - 1` vertices. Every violating subfamily
//! contains such a witness, and every minimal witness is connected, so the
//! exact search only grows connected subfamilies from a root edge.

mod brute;
mod dfs;
mod ks2;
mod matching;

use rayon::prelude::*;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::bitset::{VertexMask, WideMask};
use crate::hypergraph::Hypergraph;

pub use brute::{brute_force_violation, subfamily_count, DEFAULT_BRUTE_FORCE_BUDGET};
pub use ks2::{detect_ks2, Ks2Witness};
pub use matching::{distinct_representatives, sdr_exists};

pub(crate) use dfs::violating_span;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("k must be at least 1")]
    ZeroK,
    #[error("{subfamilies} subfamilies exceed the brute-force budget of {budget}")]
    BudgetExceeded { subfamilies: u64, budget: u64 },
    #[error("expected a 2-uniform hypergraph, got r = {r}")]
    NotAGraph { r: usize },
    #[error("graph has repeated edges")]
    NotSimple,
    #[error("{0}")]
    InvalidParameter(String),
}

/// `j` edges spanning exactly `j - 1` vertices, found while checking
/// parameter `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    k: usize,
    edge_indices: Vec<usize>,
    spanned_vertices: Vec<u32>,
}

impl Violation {
    pub(crate) fn new(k: usize, edge_indices: Vec<usize>, spanned_vertices: Vec<u32>) -> Self {
        debug_assert_eq!(edge_indices.len(), spanned_vertices.len() + 1);
        Violation { k, edge_indices, spanned_vertices }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_indices(&self) -> &[usize] {
        &self.edge_indices
    }

    pub fn spanned_vertices(&self) -> &[u32] {
        &self.spanned_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.spanned_vertices.len()
    }

    /// Re-checks the witness against `h`: sizes, minimality and the span.
    pub fn is_valid_for(&self, h: &Hypergraph) -> bool {
        let j = self.edge_indices.len();
        j >= 1
            && j <= self.k
            && self.edge_indices.windows(2).all(|w| w[0] < w[1])
            && self.spanned_vertices.len() + 1 == j
            && h.spanned_vertices(&self.edge_indices).ok().as_deref() == Some(&self.spanned_vertices[..])
    }
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            edge_indices: &'a [usize],
            spanned_vertices: &'a [u32],
            num_edges: usize,
            num_vertices: usize,
        }
        Repr {
            edge_indices: &self.edge_indices,
            spanned_vertices: &self.spanned_vertices,
            num_edges: self.num_edges(),
            num_vertices: self.num_vertices(),
        }
        .serialize(serializer)
    }
}

/// The verification result in its JSON shape:
/// `{"k": .., "violation": null | {..}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub k: usize,
    pub violation: Option<Violation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Representatives first, then the `K(s, 2)` pre-check on graphs, then DFS.
    #[default]
    Auto,
    Dfs,
    BruteForce,
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub method: Method,
    pub brute_force_budget: u64,
    /// Split the DFS over root edges on the rayon pool.
    pub parallel: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { method: Method::Auto, brute_force_budget: DEFAULT_BRUTE_FORCE_BUDGET, parallel: true }
    }
}

/// Shrinks a violating subfamily (span smaller than its size) to one with
/// deficiency exactly `-1`, keeping the lowest indices. Returns the edges
/// and their span, both ascending.
pub(crate) fn reduce_to_minimal(h: &Hypergraph, family: &[usize]) -> (Vec<usize>, Vec<u32>) {
    let mut chosen: Vec<usize> = family.to_vec();
    chosen.sort_unstable();
    chosen.dedup();
    let mut span = h.spanned_vertices(&chosen).expect("indices come from h");
    debug_assert!(span.len() < chosen.len());
    chosen.truncate(span.len() + 1);
    loop {
        let inner = h.spanned_vertices(&chosen).expect("indices come from h");
        if inner.len() + 1 == chosen.len() {
            span = inner;
            break;
        }
        chosen.truncate(inner.len() + 1);
    }
    (chosen, span)
}

enum Lowered {
    Narrow(Vec<u64>),
    Mid(Vec<u128>),
    Wide(Vec<WideMask>),
}

fn lower<B: VertexMask>(h: &Hypergraph) -> Vec<B> {
    h.edges().iter().map(|e| B::from_vertices(h.num_vertices(), e)).collect()
}

fn lowered(h: &Hypergraph) -> Lowered {
    match h.num_vertices() {
        0..=64 => Lowered::Narrow(lower(h)),
        65..=128 => Lowered::Mid(lower(h)),
        _ => Lowered::Wide(lower(h)),
    }
}

fn first_rooted_violation<B: VertexMask>(edges: &[B], k: usize, parallel: bool) -> Option<Vec<usize>> {
    let max_span = k - 1;
    let probe =
        |root: usize| violating_span(edges, root, root, max_span).map(|w| dfs::edges_inside(edges, &w, root));
    // The canonical witness belongs to the smallest root, whatever the
    // scheduling.
    if parallel {
        (0..edges.len()).into_par_iter().find_map_first(probe)
    } else {
        (0..edges.len()).find_map(probe)
    }
}

fn dfs_violation(h: &Hypergraph, k: usize, parallel: bool) -> Option<Violation> {
    let limit = k.min(h.num_edges());
    if limit == 0 {
        return None;
    }
    let family = match lowered(h) {
        Lowered::Narrow(e) => first_rooted_violation(&e, limit, parallel),
        Lowered::Mid(e) => first_rooted_violation(&e, limit, parallel),
        Lowered::Wide(e) => first_rooted_violation(&e, limit, parallel),
    }?;
    let (edges, vertices) = reduce_to_minimal(h, &family);
    Some(Violation::new(k, edges, vertices))
}

/// Exact check of the batch condition for `k` with the default strategy.
pub fn find_violation(h: &Hypergraph, k: usize) -> Result<Option<Violation>, VerifyError> {
    find_violation_with(h, k, &VerifyOptions::default())
}

pub fn find_violation_with(
    h: &Hypergraph,
    k: usize,
    options: &VerifyOptions,
) -> Result<Option<Violation>, VerifyError> {
    if k == 0 {
        return Err(VerifyError::ZeroK);
    }
    match options.method {
        Method::BruteForce => brute_force_violation(h, k, options.brute_force_budget),
        Method::Dfs => Ok(dfs_violation(h, k, options.parallel)),
        Method::Auto => {
            if sdr_exists(h) {
                return Ok(None);
            }
            if k >= 6 && h.r() == 2 && h.is_simple() {
                if let Some(hit) = detect_ks2(h, k.div_ceil(2))? {
                    let (edges, vertices) = reduce_to_minimal(h, &hit.edge_indices);
                    return Ok(Some(Violation::new(k, edges, vertices)));
                }
            }
            Ok(dfs_violation(h, k, options.parallel))
        }
    }
}

/// True if adding edge `new_edge` to `edges` (where it already sits) creates
/// a violation for `k`, assuming the remaining edges were violation-free.
pub(crate) fn violation_through<B: VertexMask>(edges: &[B], new_edge: usize, k: usize) -> bool {
    let limit = k.min(edges.len());
    limit > 0 && violating_span(edges, new_edge, 0, limit - 1).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{balanced_multipartite, complete_bipartite, theta_graph};
    use crate::hypergraph::parse_hypergraph;

    fn k4() -> Hypergraph {
        parse_hypergraph("4 6 2\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n").unwrap()
    }

    fn all_methods() -> [VerifyOptions; 4] {
        let base = VerifyOptions::default();
        [
            base,
            VerifyOptions { method: Method::Dfs, ..base },
            VerifyOptions { method: Method::Dfs, parallel: false, ..base },
            VerifyOptions { method: Method::BruteForce, ..base },
        ]
    }

    #[test]
    fn k4_fails_for_five() {
        for opts in all_methods() {
            let v = find_violation_with(&k4(), 5, &opts).unwrap().unwrap();
            assert_eq!(v.num_edges(), 5);
            assert_eq!(v.num_vertices(), 4);
            assert!(v.is_valid_for(&k4()));
            assert_eq!(find_violation_with(&k4(), 4, &opts).unwrap(), None);
        }
    }

    #[test]
    fn k33_passes_five_fails_six() {
        let g = complete_bipartite(6).unwrap();
        for opts in all_methods() {
            assert_eq!(find_violation_with(&g, 5, &opts).unwrap(), None);
            let v = find_violation_with(&g, 6, &opts).unwrap().unwrap();
            assert_eq!((v.num_edges(), v.num_vertices()), (6, 5));
            assert!(v.is_valid_for(&g));
        }
    }

    #[test]
    fn theta_six_is_one_whole_violation() {
        let t = theta_graph(6).unwrap();
        let v = brute_force_violation(&t, 6, 1_000).unwrap().unwrap();
        assert_eq!(v.edge_indices(), &[0, 1, 2, 3, 4, 5]);
        assert_eq!(v.spanned_vertices(), &[0, 1, 2, 3, 4]);
        assert_eq!(find_violation(&t, 6).unwrap(), Some(v));
        assert_eq!(find_violation(&t, 5).unwrap(), None);
    }

    #[test]
    fn dfs_witness_is_deterministic() {
        let g = complete_bipartite(7).unwrap();
        let seq = VerifyOptions { method: Method::Dfs, parallel: false, ..Default::default() };
        let par = VerifyOptions { method: Method::Dfs, ..Default::default() };
        let a = find_violation_with(&g, 6, &seq).unwrap();
        for _ in 0..5 {
            assert_eq!(find_violation_with(&g, 6, &par).unwrap(), a);
        }
        assert_eq!(a.unwrap().edge_indices(), &[0, 1, 2, 4, 5, 6]);
    }

    #[test]
    fn k_beyond_edge_count_is_capped() {
        let tri = parse_hypergraph("3 3 2\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(find_violation(&tri, 50).unwrap(), None);
        assert_eq!(find_violation(&tri, 0).unwrap_err(), VerifyError::ZeroK);
        let empty = parse_hypergraph("3 0 2\n").unwrap();
        assert_eq!(find_violation_with(&empty, 3, &all_methods()[1]).unwrap(), None);
    }

    #[test]
    fn empty_edges_and_multiplicity() {
        let h = parse_hypergraph("2 2 0\n0 1\n\n").unwrap();
        for opts in all_methods() {
            let v = find_violation_with(&h, 1, &opts).unwrap().unwrap();
            assert_eq!(v.edge_indices(), &[1]);
            assert!(v.spanned_vertices().is_empty());
        }
        let copies = parse_hypergraph("3 3 2\n0 1\n0 1\n0 1\n").unwrap();
        for opts in all_methods() {
            assert_eq!(find_violation_with(&copies, 2, &opts).unwrap(), None);
            let v = find_violation_with(&copies, 3, &opts).unwrap().unwrap();
            assert_eq!(v.edge_indices(), &[0, 1, 2]);
        }
    }

    #[test]
    fn wide_vertex_sets_use_the_same_search() {
        // Two disjoint K4s far apart in a 200-vertex space.
        let mut edges = Vec::new();
        for base in [10u32, 150] {
            for a in 0..4 {
                for b in a + 1..4 {
                    edges.push(vec![base + a, base + b]);
                }
            }
        }
        let h = Hypergraph::new(200, 2, edges).unwrap();
        let dfs = VerifyOptions { method: Method::Dfs, ..Default::default() };
        let v = find_violation_with(&h, 5, &dfs).unwrap().unwrap();
        assert!(v.is_valid_for(&h));
        assert!(v.spanned_vertices().iter().all(|&x| x < 14));
        let mid = Hypergraph::new(100, 2, h.edges()[..6].to_vec()).unwrap();
        assert!(find_violation_with(&mid, 5, &dfs).unwrap().is_some());
    }

    #[test]
    fn multipartite_passes_its_k() {
        let h = balanced_multipartite(12, 3).unwrap();
        assert_eq!(find_violation(&h, 6).unwrap(), None);
        // Two vertices from each part carry 8 edges on 6 vertices.
        let v = find_violation(&h, 7).unwrap().unwrap();
        assert_eq!((v.num_edges(), v.num_vertices()), (7, 6));
    }

    #[test]
    fn witness_serializes_with_counts() {
        let v = find_violation(&k4(), 5).unwrap();
        let json = serde_json::to_string(&WitnessReport { k: 5, violation: v }).unwrap();
        assert!(json.starts_with("{\"k\":5,\"violation\":{\"edge_indices\":["));
        assert!(json.contains("\"num_edges\":5,\"num_vertices\":4"));
        let none = serde_json::to_string(&WitnessReport { k: 5, violation: None }).unwrap();
        assert_eq!(none, "{\"k\":5,\"violation\":null}");
    }

    #[test]
    fn incremental_check_sees_only_new_violations() {
        let k4: Vec<u64> = k4().edges().iter().map(|e| u64::from_vertices(4, e)).collect();
        assert!(!violation_through(&k4[..4], 3, 5));
        assert!(violation_through(&k4[..5], 4, 5));
        assert!(!violation_through(&k4[..5], 4, 4));
    }
}
