//! Rooted homomorphism counts as vertex features.
//!
//! The crate counts homomorphisms from small rooted patterns into labelled graphs,
//! runs colour refinement augmented with those counts (and plain 1-WL / folklore k-WL
//! for comparison), manipulates patterns (join, core, spasm, treewidth), builds graph
//! pairs that separate these tests, and exports normalised feature tables.
//!
//! ```
//! use hompat::graph::{Graph, RootedPattern};
//! use hompat::hom::hom_count_dp;
//!
//! let g = Graph::new("g", 4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
//! let triangles = hom_count_dp(&RootedPattern::clique(3), &g);
//! assert_eq!(triangles.counts, vec![2, 2, 2, 0]);
//! ```

pub mod algebra;
pub mod error;
pub mod families;
pub mod features;
pub mod graph;
pub mod hom;
pub mod trees;
pub mod wl;

pub use error::{Error, Result};
pub use graph::{Graph, LabelAlphabet, RootedPattern};
