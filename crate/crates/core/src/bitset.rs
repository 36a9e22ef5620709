//! Vertex-set masks used by the hot loops of the verifier and the search.
//!
//! A hypergraph is lowered to one mask per edge before searching. The width is
//! picked from the vertex count so that graphs of up to 64 (or 128) vertices
//! never allocate while exploring spans.

use std::hash::Hash;

pub(crate) trait VertexMask: Clone + Eq + Hash + Send + Sync {
    fn empty(n: usize) -> Self;
    fn insert(&mut self, v: u32);
    fn union(&self, other: &Self) -> Self;
    fn is_subset(&self, other: &Self) -> bool;
    fn intersects(&self, other: &Self) -> bool;
    fn count(&self) -> usize;
    fn vertices(&self) -> Vec<u32>;

    fn from_vertices(n: usize, vs: &[u32]) -> Self {
        let mut m = Self::empty(n);
        for &v in vs {
            m.insert(v);
        }
        m
    }
}

macro_rules! impl_word_mask {
    ($t:ty, $bits:expr) => {
        impl VertexMask for $t {
            #[inline]
            fn empty(n: usize) -> Self {
                debug_assert!(n <= $bits);
                0
            }
            #[inline]
            fn insert(&mut self, v: u32) {
                *self |= 1 << v;
            }
            #[inline]
            fn union(&self, other: &Self) -> Self {
                self | other
            }
            #[inline]
            fn is_subset(&self, other: &Self) -> bool {
                self & !other == 0
            }
            #[inline]
            fn intersects(&self, other: &Self) -> bool {
                self & other != 0
            }
            #[inline]
            fn count(&self) -> usize {
                self.count_ones() as usize
            }
            fn vertices(&self) -> Vec<u32> {
                let mut out = Vec::with_capacity(self.count());
                let mut rest = *self;
                while rest != 0 {
                    out.push(rest.trailing_zeros());
                    rest &= rest - 1;
                }
                out
            }
        }
    };
}

impl_word_mask!(u64, 64);
impl_word_mask!(u128, 128);

/// Multi-word mask for vertex counts beyond 128.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct WideMask(Box<[u64]>);

impl VertexMask for WideMask {
    fn empty(n: usize) -> Self {
        WideMask(vec![0; n.div_ceil(64).max(1)].into_boxed_slice())
    }
    fn insert(&mut self, v: u32) {
        self.0[(v / 64) as usize] |= 1 << (v % 64);
    }
    fn union(&self, other: &Self) -> Self {
        WideMask(self.0.iter().zip(other.0.iter()).map(|(a, b)| a | b).collect())
    }
    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a & !b == 0)
    }
    fn intersects(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0.iter()).any(|(a, b)| a & b != 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn vertices(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &w) in self.0.iter().enumerate() {
            let mut rest = w;
            while rest != 0 {
                out.push(i as u32 * 64 + rest.trailing_zeros());
                rest &= rest - 1;
            }
        }
        out
    }
}
