//! Exact values of `m(n, r, k)`, the largest simple `r`-uniform hypergraph on
//! `n` vertices satisfying the batch condition, by branch and bound.
//!
//! The search walks the `C(n, r)` candidate edges in lexicographic order and
//! decides "take" before "skip" for each one. Only violations through the
//! edge just taken are searched, since the family before it was clean.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::VertexMask;
use crate::bounds::counting_upper;
use crate::constructions::r_subsets;
use crate::hypergraph::Hypergraph;
use crate::verifier::violation_through;

/// Largest vertex count the search packs into one machine word.
pub const MAX_SEARCH_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("parameters out of range: {0}")]
    Regime(String),
    #[error("custom edge order is not a permutation of the {0} candidate edges")]
    BadOrder(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    ProvenOptimal,
    /// The budget ran out; `m_value` is only a lower bound.
    LowerBoundOnly,
}

impl SearchStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchStatus::ProvenOptimal => "proven-optimal",
            SearchStatus::LowerBoundOnly => "lower-bound-only",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    pub m_value: usize,
    pub witness: Hypergraph,
    pub status: SearchStatus,
    pub nodes_explored: u64,
}

/// Node and wall-clock limits. Running out degrades the status instead of
/// failing.
#[derive(Debug, Clone, Copy, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn seconds(secs: f64) -> Self {
        Budget { max_nodes: None, max_time: Some(Duration::from_secs_f64(secs)) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeedOrder {
    Lexicographic,
    /// A seeded shuffle of the lexicographic candidate list.
    Shuffled(u64),
    /// Explicit permutation of the candidate indices.
    Custom(Vec<usize>),
}

fn check_regime(n: usize, r: usize, k: usize) -> Result<(), SearchError> {
    if r == 0 || r > n {
        return Err(SearchError::Regime(format!("need 1 <= r <= n, got n = {n}, r = {r}")));
    }
    if k <= r {
        return Err(SearchError::Regime(format!("need r < k, got r = {r}, k = {k}")));
    }
    if n > MAX_SEARCH_VERTICES {
        return Err(SearchError::Regime(format!(
            "n = {n} exceeds the search limit of {MAX_SEARCH_VERTICES} vertices"
        )));
    }
    Ok(())
}

fn candidates(n: usize, r: usize) -> Vec<u64> {
    r_subsets(n, r).iter().map(|e| u64::from_vertices(n, e)).collect()
}

fn to_hypergraph(n: usize, r: usize, family: &[u64]) -> Hypergraph {
    let edges = family.iter().map(|m| m.vertices()).collect();
    Hypergraph::new(n, r, edges).expect("masks hold r vertices below n")
}

/// Takes the candidates in the given order, keeping each edge that does not
/// create a violation. The result is a valid batch code, maximal with respect
/// to the order.
pub fn greedy_lower(n: usize, r: usize, k: usize, order: &SeedOrder) -> Result<SearchResult, SearchError> {
    check_regime(n, r, k)?;
    let cands = candidates(n, r);
    let perm: Vec<usize> = match order {
        SeedOrder::Lexicographic => (0..cands.len()).collect(),
        SeedOrder::Shuffled(seed) => {
            let mut p: Vec<usize> = (0..cands.len()).collect();
            p.shuffle(&mut ChaCha8Rng::seed_from_u64(*seed));
            p
        }
        SeedOrder::Custom(p) => {
            let mut sorted = p.clone();
            sorted.sort_unstable();
            if sorted != (0..cands.len()).collect::<Vec<_>>() {
                return Err(SearchError::BadOrder(cands.len()));
            }
            p.clone()
        }
    };
    let mut family: Vec<u64> = Vec::new();
    for &i in &perm {
        family.push(cands[i]);
        if violation_through(&family, family.len() - 1, k) {
            family.pop();
        }
    }
    Ok(SearchResult {
        m_value: family.len(),
        witness: to_hypergraph(n, r, &family),
        status: SearchStatus::LowerBoundOnly,
        nodes_explored: perm.len() as u64,
    })
}

struct BranchAndBound<'a> {
    cands: &'a [u64],
    k: usize,
    ceiling: usize,
    budget: Budget,
    started: Instant,
    current: Vec<u64>,
    best: Vec<u64>,
    nodes: u64,
    out_of_budget: bool,
    at_ceiling: bool,
}

impl BranchAndBound<'_> {
    fn spent(&mut self) -> bool {
        if self.out_of_budget {
            return true;
        }
        if self.budget.max_nodes.is_some_and(|max| self.nodes >= max) {
            self.out_of_budget = true;
        }
        if self.nodes % 1024 == 0 && self.budget.max_time.is_some_and(|t| self.started.elapsed() >= t) {
            self.out_of_budget = true;
        }
        self.out_of_budget
    }

    fn explore(&mut self, next: usize) {
        self.nodes += 1;
        if self.current.len() > self.best.len() {
            self.best.clone_from(&self.current);
            if self.best.len() >= self.ceiling {
                self.at_ceiling = true;
            }
        }
        if self.at_ceiling || self.spent() || next == self.cands.len() {
            return;
        }
        if self.current.len() + (self.cands.len() - next) <= self.best.len() {
            return;
        }
        self.current.push(self.cands[next]);
        if !violation_through(&self.current, self.current.len() - 1, self.k) {
            self.explore(next + 1);
        }
        self.current.pop();
        // Relabelling vertices moves any non-empty family onto one that
        // contains the first candidate, so it is never skipped.
        if next > 0 {
            self.explore(next + 1);
        }
    }
}

/// Computes `m(n, r, k)` exactly, or the best value found within `budget`.
///
/// The incumbent starts from the lexicographic greedy family; branches that
/// cannot beat it are cut, and the search stops early if it reaches the
/// counting bound.
pub fn max_cbc(n: usize, r: usize, k: usize, budget: &Budget) -> Result<SearchResult, SearchError> {
    check_regime(n, r, k)?;
    let cands = candidates(n, r);
    let seed = greedy_lower(n, r, k, &SeedOrder::Lexicographic)?;
    let ceiling = counting_upper(n as u64, r as u64, k as u64)
        .ok()
        .and_then(|v| usize::try_from(v.floor().to_integer()).ok())
        .unwrap_or(cands.len())
        .min(cands.len());
    let greedy_family: Vec<u64> = seed.witness.edges().iter().map(|e| u64::from_vertices(n, e)).collect();
    let mut bb = BranchAndBound {
        cands: &cands,
        k,
        ceiling,
        budget: *budget,
        started: Instant::now(),
        current: Vec::new(),
        at_ceiling: greedy_family.len() >= ceiling,
        best: greedy_family,
        nodes: 0,
        out_of_budget: false,
    };
    bb.explore(0);
    let status = if bb.out_of_budget && !bb.at_ceiling {
        SearchStatus::LowerBoundOnly
    } else {
        SearchStatus::ProvenOptimal
    };
    Ok(SearchResult {
        m_value: bb.best.len(),
        witness: to_hypergraph(n, r, &bb.best),
        status,
        nodes_explored: bb.nodes,
    })
}
