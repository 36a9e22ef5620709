//! Exhaustive reference check: every edge subset of size at most `k`.

use super::{reduce_to_minimal, VerifyError, Violation};
use crate::hypergraph::Hypergraph;

pub const DEFAULT_BRUTE_FORCE_BUDGET: u64 = 200_000_000;

/// Number of non-empty subsets of size at most `k` out of `m`, saturating.
pub fn subfamily_count(m: usize, k: usize) -> u64 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 1..=k.min(m) {
        binom = binom * (m - i + 1) as u128 / i as u128;
        total = total.saturating_add(binom);
        if total > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    total as u64
}

/// Enumerates all subfamilies of at most `min(k, m)` edges in lexicographic
/// order and reports the first one spanning fewer vertices than edges,
/// reduced to a minimal violation.
pub fn brute_force_violation(
    h: &Hypergraph,
    k: usize,
    budget: u64,
) -> Result<Option<Violation>, VerifyError> {
    if k == 0 {
        return Err(VerifyError::ZeroK);
    }
    let m = h.num_edges();
    let limit = k.min(m);
    let count = subfamily_count(m, limit);
    if count > budget {
        return Err(VerifyError::BudgetExceeded { subfamilies: count, budget });
    }
    let mut walk =
        Walk { h, limit, cover: vec![0u32; h.num_vertices()], span: 0, chosen: Vec::with_capacity(limit) };
    Ok(walk.run(0).then(|| {
        let (edges, vertices) = reduce_to_minimal(h, &walk.chosen);
        Violation::new(k, edges, vertices)
    }))
}

struct Walk<'a> {
    h: &'a Hypergraph,
    limit: usize,
    cover: Vec<u32>,
    span: usize,
    chosen: Vec<usize>,
}

impl Walk<'_> {
    /// Returns true with `chosen` holding a violating subfamily.
    fn run(&mut self, next: usize) -> bool {
        if self.chosen.len() == self.limit {
            return false;
        }
        for e in next..self.h.num_edges() {
            for &v in self.h.edge(e) {
                if self.cover[v as usize] == 0 {
                    self.span += 1;
                }
                self.cover[v as usize] += 1;
            }
            self.chosen.push(e);
            if self.span < self.chosen.len() || self.run(e + 1) {
                return true;
            }
            self.chosen.pop();
            for &v in self.h.edge(e) {
                self.cover[v as usize] -= 1;
                if self.cover[v as usize] == 0 {
                    self.span -= 1;
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::parse_hypergraph;

    #[test]
    fn counts_subfamilies() {
        assert_eq!(subfamily_count(3, 5), 7);
        assert_eq!(subfamily_count(6, 2), 21);
        assert_eq!(subfamily_count(0, 4), 0);
        assert_eq!(subfamily_count(10_000, 40), u64::MAX);
    }

    #[test]
    fn triangle_is_clean() {
        let tri = parse_hypergraph("3 3 2\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(brute_force_violation(&tri, 5, 1000).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced() {
        let tri = parse_hypergraph("3 3 2\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(
            brute_force_violation(&tri, 3, 6).unwrap_err(),
            VerifyError::BudgetExceeded { subfamilies: 7, budget: 6 }
        );
        assert_eq!(brute_force_violation(&tri, 0, 6).unwrap_err(), VerifyError::ZeroK);
    }

    #[test]
    fn parallel_copies() {
        // Two copies of a 2-edge still span two vertices; three do not.
        let h = parse_hypergraph("3 2 2\n0 1\n0 1\n").unwrap();
        assert_eq!(brute_force_violation(&h, 5, 100).unwrap(), None);
        let h = parse_hypergraph("3 3 2\n0 1\n0 1\n0 1\n").unwrap();
        assert_eq!(brute_force_violation(&h, 2, 100).unwrap(), None);
        let v = brute_force_violation(&h, 3, 100).unwrap().unwrap();
        assert_eq!(v.edge_indices(), &[0, 1, 2]);
        assert_eq!(v.spanned_vertices(), &[0, 1]);
        // The first subfamily found in lexicographic order is {0, 1, 2}.
        let h = parse_hypergraph("2 3 1\n0\n1\n0\n").unwrap();
        let v = brute_force_violation(&h, 3, 100).unwrap().unwrap();
        assert_eq!(v.edge_indices(), &[0, 1, 2]);
        assert_eq!(v.spanned_vertices(), &[0, 1]);
    }
}
