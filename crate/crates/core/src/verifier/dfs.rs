//! Depth-first enumeration of connected subfamilies, keyed by their span.
//!
//! Two subfamilies with the same span and the same root are interchangeable
//! here: the best subfamily on a span `W` is every admissible edge inside `W`,
//! so the search walks distinct spans and counts the edges each one contains.
//! A span is abandoned once it reaches `k` vertices, which is exactly the
//! condition `deficiency(S) >= k - |S|` for the closed subfamily on it.

use std::collections::HashSet;

use crate::bitset::VertexMask;

/// Looks for a span `W` with `|W| <= max_span` reachable from `edges[root]`
/// through edges with index `>= first_allowed`, containing at least `|W| + 1`
/// such edges. Spans are explored depth-first with extension edges in
/// increasing index order.
pub(crate) fn violating_span<B: VertexMask>(
    edges: &[B],
    root: usize,
    first_allowed: usize,
    max_span: usize,
) -> Option<B> {
    let start = edges[root].clone();
    if start.count() > max_span {
        return None;
    }
    let mut seen: HashSet<B> = HashSet::new();
    seen.insert(start.clone());
    let mut stack = vec![start];
    let mut children: Vec<B> = Vec::new();

    while let Some(span) = stack.pop() {
        let size = span.count();
        let mut inside = 0usize;
        children.clear();
        for e in &edges[first_allowed..] {
            if e.is_subset(&span) {
                inside += 1;
            } else if e.intersects(&span) {
                let grown = span.union(e);
                if grown.count() <= max_span && seen.insert(grown.clone()) {
                    children.push(grown);
                }
            }
        }
        if inside > size {
            return Some(span);
        }
        stack.extend(children.drain(..).rev());
    }
    None
}

/// Indices `>= first_allowed` of the edges contained in `span`, ascending.
pub(crate) fn edges_inside<B: VertexMask>(edges: &[B], span: &B, first_allowed: usize) -> Vec<usize> {
    (first_allowed..edges.len()).filter(|&i| edges[i].is_subset(span)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn masks(edges: &[&[u32]]) -> Vec<u64> {
        edges.iter().map(|e| u64::from_vertices(64, e)).collect()
    }

    #[test]
    fn finds_k4_minus_edge() {
        let k4 = masks(&[&[0, 1], &[0, 2], &[0, 3], &[1, 2], &[1, 3], &[2, 3]]);
        let w = violating_span(&k4, 0, 0, 4).unwrap();
        assert_eq!(w.count(), 4);
        assert!(violating_span(&k4, 0, 0, 3).is_none());
    }

    #[test]
    fn respects_first_allowed() {
        // Two copies of a singleton: a violation only when both are admissible.
        let e = masks(&[&[0], &[0]]);
        assert!(violating_span(&e, 0, 0, 1).is_some());
        assert!(violating_span(&e, 1, 1, 1).is_none());
        assert_eq!(edges_inside(&e, &e[0], 1), vec![1]);
    }

    #[test]
    fn empty_edge_is_its_own_violation() {
        let e = masks(&[&[], &[0]]);
        assert_eq!(violating_span(&e, 0, 0, 1), Some(0));
    }
}
