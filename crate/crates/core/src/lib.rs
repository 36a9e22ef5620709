//! Combinatorial batch codes as hypergraphs.
//!
//! A hypergraph on `n` vertices (servers) whose edges are the server sets of
//! the stored items is a batch code with retrievability `k` when every `i <= k`
//! edges together touch at least `i` vertices. This crate builds the explicit
//! families that matter for the extremal question "how many edges can such an
//! `r`-uniform hypergraph have", verifies the condition exactly, computes small
//! extremal values, and evaluates the known bounds.
//!
//! ```
//! use cbc_core::{constructions, verifier};
//!
//! let k33 = constructions::complete_bipartite(6).unwrap();
//! assert!(verifier::find_violation(&k33, 5).unwrap().is_none());
//! let v = verifier::find_violation(&k33, 6).unwrap().unwrap();
//! assert_eq!((v.num_edges(), v.num_vertices()), (6, 5));
//! ```

mod bitset;

pub mod bounds;
pub mod constructions;
pub mod hypergraph;
pub mod metrics;
pub mod search;
pub mod verifier;

pub use bounds::BoundReport;
pub use constructions::{ConstructionKind, ConstructionSpec};
pub use hypergraph::{parse_hypergraph, Hypergraph, Subfamily};
pub use metrics::Girth;
pub use search::{Budget, SearchResult, SearchStatus};
pub use verifier::{find_violation, Violation, WitnessReport};
