//! Computational engine for the cactus groups `J_n` and their pure
//! subgroups: normal forms, word, conjugacy and order problems, median
//! geometry of the Cayley graph, the embedding into a right-angled Coxeter
//! group, and finite topological invariants.

pub mod conjugacy;
pub mod error;
pub mod geodesic;
pub mod group;
pub mod median;
pub mod racg;
pub mod rewrite;
pub mod topology;
pub mod verify;

pub use error::{CactusError, Result};
pub use group::{label, reflect, sigma, GroupContext, Interval, Permutation, SizeSet, StrandSet, Word};
pub use rewrite::{equal, normalize, NormalWord};
