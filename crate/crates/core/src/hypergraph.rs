//! Finite hypergraphs over the vertex set `0..n`, their text format, and the
//! span / deficiency quantities that the batch-code condition is stated in.
//!
//! Edges are kept in insertion order. A repeated edge is a second, distinct
//! edge: the batch condition counts copies separately.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Vertex counts up to `64 * DEFAULT_WORD_BUDGET` get a packed bit-row per edge.
pub const DEFAULT_WORD_BUDGET: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("edge {edge}: vertex {vertex} is out of range for n = {n}")]
    VertexOutOfRange { edge: usize, vertex: u32, n: usize },
    #[error("edge {edge} has {found} vertices, expected {expected}")]
    WrongEdgeSize { edge: usize, expected: usize, found: usize },
    #[error("edge {edge} is not strictly increasing")]
    UnsortedEdge { edge: usize },
    #[error("edge index {index} is out of range ({edges} edges)")]
    EdgeIndexOutOfRange { index: usize, edges: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header, expected \"n m r\"")]
    MalformedHeader { line: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: invalid vertex index {token:?}")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: vertex index {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: u32, n: usize },
    #[error("line {line}: edge has {found} vertices, expected {expected}")]
    WrongEdgeSize { line: usize, expected: usize, found: usize },
    #[error("line {line}: edge indices must be strictly increasing")]
    UnsortedEdge { line: usize },
    #[error("line {line}: content after the last declared edge")]
    TrailingContent { line: usize },
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
}

/// An edge multiset on the vertices `0..n`.
#[derive(Clone)]
pub struct Hypergraph {
    n: usize,
    r: usize,
    edges: Vec<Vec<u32>>,
    rows: Option<BitRows>,
}

#[derive(Clone)]
struct BitRows {
    words: usize,
    data: Vec<u64>,
}

impl BitRows {
    fn build(n: usize, edges: &[Vec<u32>]) -> Self {
        let words = n.div_ceil(64).max(1);
        let mut data = vec![0u64; words * edges.len()];
        for (i, e) in edges.iter().enumerate() {
            let row = &mut data[i * words..(i + 1) * words];
            for &v in e {
                row[(v / 64) as usize] |= 1 << (v % 64);
            }
        }
        BitRows { words, data }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.r == other.r && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Hypergraph")
            .field("n", &self.n)
            .field("r", &self.r)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Hypergraph {
    /// Builds a hypergraph, checking every structural invariant.
    ///
    /// `r == 0` declares a non-uniform hypergraph.
    pub fn new(n: usize, r: usize, edges: Vec<Vec<u32>>) -> Result<Self, HypergraphError> {
        Self::with_word_budget(n, r, edges, DEFAULT_WORD_BUDGET)
    }

    /// Like [`Hypergraph::new`], but packs edges into bit rows only when
    /// `n` fits into `word_budget` 64-bit words.
    pub fn with_word_budget(
        n: usize,
        r: usize,
        edges: Vec<Vec<u32>>,
        word_budget: usize,
    ) -> Result<Self, HypergraphError> {
        for (i, e) in edges.iter().enumerate() {
            if r > 0 && e.len() != r {
                return Err(HypergraphError::WrongEdgeSize { edge: i, expected: r, found: e.len() });
            }
            if e.windows(2).any(|w| w[0] >= w[1]) {
                return Err(HypergraphError::UnsortedEdge { edge: i });
            }
            if let Some(&v) = e.iter().find(|&&v| v as usize >= n) {
                return Err(HypergraphError::VertexOutOfRange { edge: i, vertex: v, n });
            }
        }
        let rows = (n.div_ceil(64) <= word_budget).then(|| BitRows::build(n, &edges));
        Ok(Hypergraph { n, r, edges, rows })
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Declared uniformity, `None` for a non-uniform hypergraph.
    pub fn uniformity(&self) -> Option<usize> {
        (self.r > 0).then_some(self.r)
    }

    /// The raw header value: `0` when non-uniform.
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Sum of the edge sizes (the storage `N` of the batch code).
    pub fn total_size(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn edges(&self) -> &[Vec<u32>] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &[u32] {
        &self.edges[i]
    }

    pub fn is_bit_packed(&self) -> bool {
        self.rows.is_some()
    }

    /// True when no edge appears more than once.
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|e| seen.insert(e.as_slice()))
    }

    fn check_indices(&self, selection: &[usize]) -> Result<(), HypergraphError> {
        match selection.iter().find(|&&i| i >= self.edges.len()) {
            Some(&index) => Err(HypergraphError::EdgeIndexOutOfRange { index, edges: self.edges.len() }),
            None => Ok(()),
        }
    }

    /// Sorted union of the selected edges.
    pub fn spanned_vertices(&self, selection: &[usize]) -> Result<Vec<u32>, HypergraphError> {
        self.check_indices(selection)?;
        Ok(match &self.rows {
            Some(rows) => {
                let mut acc = vec![0u64; rows.words];
                for &i in selection {
                    for (a, w) in acc.iter_mut().zip(rows.row(i)) {
                        *a |= w;
                    }
                }
                let mut out = Vec::new();
                for (wi, &w) in acc.iter().enumerate() {
                    let mut rest = w;
                    while rest != 0 {
                        out.push(wi as u32 * 64 + rest.trailing_zeros());
                        rest &= rest - 1;
                    }
                }
                out
            }
            None => {
                let set: BTreeSet<u32> =
                    selection.iter().flat_map(|&i| self.edges[i].iter().copied()).collect();
                set.into_iter().collect()
            }
        })
    }

    /// Number of distinct vertices covered by the selected edges.
    /// Repeated indices in `selection` are counted once.
    pub fn span(&self, selection: &[usize]) -> Result<usize, HypergraphError> {
        self.check_indices(selection)?;
        Ok(match &self.rows {
            Some(rows) => {
                let mut acc = vec![0u64; rows.words];
                for &i in selection {
                    for (a, w) in acc.iter_mut().zip(rows.row(i)) {
                        *a |= w;
                    }
                }
                acc.iter().map(|w| w.count_ones() as usize).sum()
            }
            None => self.spanned_vertices(selection)?.len(),
        })
    }

    /// `span - |selection|`, where the selection is taken as a set.
    pub fn deficiency(&self, selection: &[usize]) -> Result<i64, HypergraphError> {
        let distinct: BTreeSet<usize> = selection.iter().copied().collect();
        let span = self.span(selection)?;
        Ok(span as i64 - distinct.len() as i64)
    }

    /// Serializes into the text format accepted by [`parse_hypergraph`].
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} {}", self.n, self.edges.len(), self.r)?;
        for e in &self.edges {
            let mut first = true;
            for v in e {
                if !first {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
                first = false;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// A set of edges of one hypergraph, with its span and deficiency cached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subfamily {
    edge_indices: Vec<usize>,
    span: usize,
    deficiency: i64,
}

impl Subfamily {
    pub fn new(h: &Hypergraph, indices: &[usize]) -> Result<Self, HypergraphError> {
        let edge_indices: Vec<usize> = indices.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let span = h.span(&edge_indices)?;
        Ok(Subfamily { deficiency: span as i64 - edge_indices.len() as i64, edge_indices, span })
    }

    pub fn edge_indices(&self) -> &[usize] {
        &self.edge_indices
    }

    pub fn len(&self) -> usize {
        self.edge_indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_indices.is_empty()
    }

    pub fn span(&self) -> usize {
        self.span
    }

    pub fn deficiency(&self) -> i64 {
        self.deficiency
    }
}

fn parse_usize_field(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse().map_err(|_| ParseError::MalformedHeader { line })
}

/// Parses the text format: a header `n m r`, then `m` edge lines of strictly
/// increasing vertex indices. Lines starting with `#` are ignored.
///
/// For `r = 0` an empty line is an empty edge; blank lines before the
/// header are skipped.
pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.starts_with('#'));

    let (header_line, header) =
        lines.by_ref().find(|(_, l)| !l.trim().is_empty()).ok_or(ParseError::MissingHeader)?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(ParseError::MalformedHeader { line: header_line });
    }
    let n = parse_usize_field(fields[0], header_line)?;
    let m = parse_usize_field(fields[1], header_line)?;
    let r = parse_usize_field(fields[2], header_line)?;

    let mut edges = Vec::with_capacity(m);
    for (line, l) in lines {
        if edges.len() == m {
            if l.trim().is_empty() {
                continue;
            }
            return Err(ParseError::TrailingContent { line });
        }
        let mut edge = Vec::new();
        for tok in l.split_whitespace() {
            let v: u32 =
                tok.parse().map_err(|_| ParseError::InvalidToken { line, token: tok.to_string() })?;
            if v as usize >= n {
                return Err(ParseError::VertexOutOfRange { line, vertex: v, n });
            }
            if edge.last().is_some_and(|&last| last >= v) {
                return Err(ParseError::UnsortedEdge { line });
            }
            edge.push(v);
        }
        if r > 0 && edge.len() != r {
            return Err(ParseError::WrongEdgeSize { line, expected: r, found: edge.len() });
        }
        edges.push(edge);
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch { expected: m, found: edges.len() });
    }
    Ok(Hypergraph::new(n, r, edges).expect("parser enforces every invariant"))
}

impl FromStr for Hypergraph {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_hypergraph(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k4() -> Hypergraph {
        let mut edges = Vec::new();
        for a in 0..4u32 {
            for b in a + 1..4 {
                edges.push(vec![a, b]);
            }
        }
        Hypergraph::new(4, 2, edges).unwrap()
    }

    #[test]
    fn parses_triangle_with_isolated_vertex() {
        let h = parse_hypergraph("4 3 2\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(h.num_vertices(), 4);
        assert_eq!(h.num_edges(), 3);
        assert_eq!(h.edges(), &[vec![0, 1], vec![1, 2], vec![0, 2]]);
    }

    #[test]
    fn duplicate_lines_are_multiplicity() {
        let h = parse_hypergraph("3 2 2\n0 1\n0 1\n").unwrap();
        assert_eq!(h.num_edges(), 2);
        assert!(!h.is_simple());
        assert_eq!(h.span(&[0, 1]).unwrap(), 2);
        assert_eq!(h.deficiency(&[0, 1]).unwrap(), 0);
    }

    #[test]
    fn rejects_out_of_range_vertex_with_line() {
        let err = parse_hypergraph("3 1 2\n0 3\n").unwrap_err();
        assert_eq!(err, ParseError::VertexOutOfRange { line: 2, vertex: 3, n: 3 });
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        assert_eq!(parse_hypergraph("# c\n3 x 2\n").unwrap_err(), ParseError::MalformedHeader { line: 2 });
        assert_eq!(
            parse_hypergraph("3 1 2\n# comment\n0 1 2\n").unwrap_err(),
            ParseError::WrongEdgeSize { line: 3, expected: 2, found: 3 }
        );
        assert_eq!(parse_hypergraph("3 1 2\n1 0\n").unwrap_err(), ParseError::UnsortedEdge { line: 2 });
        assert_eq!(parse_hypergraph("3 1 2\n1 1\n").unwrap_err(), ParseError::UnsortedEdge { line: 2 });
        assert_eq!(
            parse_hypergraph("3 2 2\n0 1\n").unwrap_err(),
            ParseError::EdgeCountMismatch { expected: 2, found: 1 }
        );
        assert_eq!(
            parse_hypergraph("3 1 2\n0 -1\n").unwrap_err(),
            ParseError::InvalidToken { line: 2, token: "-1".into() }
        );
        assert_eq!(
            parse_hypergraph("2 1 2\n0 1\n0 1\n").unwrap_err(),
            ParseError::TrailingContent { line: 3 }
        );
        assert_eq!(parse_hypergraph("# only\n").unwrap_err(), ParseError::MissingHeader);
    }

    #[test]
    fn non_uniform_edges_and_comments() {
        let h = parse_hypergraph("# header follows\n5 3 0\n0\n1 2 3\n# mid\n\n").unwrap();
        assert_eq!(h.uniformity(), None);
        assert_eq!(h.edges(), &[vec![0], vec![1, 2, 3], vec![]]);
        assert_eq!(h.total_size(), 4);
    }

    #[test]
    fn serialization_has_no_trailing_whitespace() {
        let h = parse_hypergraph("# c\n4 3 2\n0 1\n1 2\n0 2\n").unwrap();
        let text = h.to_text();
        assert_eq!(text, "4 3 2\n0 1\n1 2\n0 2\n");
        assert_eq!(parse_hypergraph(&text).unwrap(), h);
    }

    #[test]
    fn span_examples() {
        let tri = parse_hypergraph("3 3 2\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(tri.span(&[0, 1]).unwrap(), 3);
        assert_eq!(tri.span(&[]).unwrap(), 0);
        assert_eq!(tri.deficiency(&[]).unwrap(), 0);
        assert_eq!(tri.span(&[2]).unwrap(), 2);
        let k4 = k4();
        assert_eq!(k4.span(&[0, 1, 2, 3, 4, 5]).unwrap(), 4);
        assert_eq!(k4.deficiency(&[0, 1, 2, 3, 4, 5]).unwrap(), -2);
        assert_eq!(k4.deficiency(&[0, 1, 2, 3, 4]).unwrap(), -1);
        assert_eq!(k4.deficiency(&[3]).unwrap(), 1);
        assert_eq!(k4.span(&[6]).unwrap_err(), HypergraphError::EdgeIndexOutOfRange { index: 6, edges: 6 });
    }

    #[test]
    fn sorted_list_fallback_matches_bit_rows() {
        let edges = vec![vec![0, 70, 129], vec![5, 70], vec![129, 200]];
        let packed = Hypergraph::new(201, 0, edges.clone()).unwrap();
        let plain = Hypergraph::with_word_budget(201, 0, edges, 1).unwrap();
        assert!(packed.is_bit_packed());
        assert!(!plain.is_bit_packed());
        for sel in [&[0usize, 1][..], &[0, 1, 2], &[2], &[]] {
            assert_eq!(packed.span(sel).unwrap(), plain.span(sel).unwrap());
            assert_eq!(packed.spanned_vertices(sel).unwrap(), plain.spanned_vertices(sel).unwrap());
        }
    }

    #[test]
    fn subfamily_caches_span_and_deficiency() {
        let k4 = k4();
        let s = Subfamily::new(&k4, &[4, 0, 1, 0]).unwrap();
        assert_eq!(s.edge_indices(), &[0, 1, 4]);
        assert_eq!(s.span(), 4);
        assert_eq!(s.deficiency(), 1);
    }

    #[test]
    fn constructor_checks_invariants() {
        assert_eq!(
            Hypergraph::new(3, 2, vec![vec![0, 1, 2]]).unwrap_err(),
            HypergraphError::WrongEdgeSize { edge: 0, expected: 2, found: 3 }
        );
        assert_eq!(
            Hypergraph::new(3, 0, vec![vec![2, 1]]).unwrap_err(),
            HypergraphError::UnsortedEdge { edge: 0 }
        );
        assert_eq!(
            Hypergraph::new(2, 0, vec![vec![0, 2]]).unwrap_err(),
            HypergraphError::VertexOutOfRange { edge: 0, vertex: 2, n: 2 }
        );
    }

    fn simple_uniform() -> impl Strategy<Value = (Hypergraph, usize)> {
        (2usize..5, 5usize..10).prop_flat_map(|(r, n)| {
            let all: Vec<Vec<u32>> = combinations(n, r);
            let len = all.len();
            (proptest::sample::subsequence(all, 2..=len.min(14)), Just(n), Just(r))
                .prop_map(|(edges, n, r)| (Hypergraph::new(n, r, edges).unwrap(), r))
        })
    }

    fn combinations(n: usize, r: usize) -> Vec<Vec<u32>> {
        fn rec(start: u32, n: u32, r: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if cur.len() == r {
                out.push(cur.clone());
                return;
            }
            for v in start..n {
                cur.push(v);
                rec(v + 1, n, r, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, n as u32, r, &mut Vec::new(), &mut out);
        out
    }

    proptest! {
        #[test]
        fn span_is_monotone_and_steps_are_bounded(
            (h, r) in simple_uniform(),
            picks in proptest::collection::vec(any::<proptest::sample::Index>(), 1..8),
        ) {
            let m = h.num_edges();
            let mut sel: Vec<usize> = Vec::new();
            let mut last_span = 0usize;
            let mut last_def = 0i64;
            for p in picks {
                let e = p.index(m);
                if sel.contains(&e) {
                    continue;
                }
                sel.push(e);
                let span = h.span(&sel).unwrap();
                let def = h.deficiency(&sel).unwrap();
                prop_assert!(span >= last_span);
                prop_assert!(span - last_span <= r);
                prop_assert!(def - last_def >= -1);
                last_span = span;
                last_def = def;
            }
        }

        #[test]
        fn distinct_edges_of_simple_uniform_span_enough((h, r) in simple_uniform()) {
            let m = h.num_edges();
            for a in 0..m {
                for b in a + 1..m {
                    prop_assert!(h.span(&[a, b]).unwrap() > r);
                }
            }
            if m >= r + 2 {
                let sel: Vec<usize> = (0..r + 2).collect();
                prop_assert!(h.span(&sel).unwrap() >= r + 2);
            }
        }
    }
}
