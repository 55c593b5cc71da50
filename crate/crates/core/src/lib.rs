//! Complete balanced binary trees on the `2^n` bit strings of length `n`,
//! with leaves in prefix (lexicographic) order in one tree and suffix
//! (co-lexicographic) order in the other.
//!
//! The crate counts the ordered quartets on which the two trees agree in three
//! independent ways (exhaustive enumeration, finite sums of per-case terms,
//! and closed-form polynomials) and derives the exact quartet distance and
//! normalized ratio from them.

pub mod bitlabel;
pub mod closed_forms;
pub mod events;
pub mod topology;
pub mod trees;

pub use bitlabel::{parse_label, Label, LabelError, LeafOrder};
pub use topology::{agree, prefix_topology, suffix_topology, Pairing, Quartet, TopologyError};
pub use trees::{build_tree, parse_newick, quartet_distance, PhyloTree, TreeError};
