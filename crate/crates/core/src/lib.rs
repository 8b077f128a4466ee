//! Boundary algebras of positroids.
//!
//! From a connected decorated permutation (or its Grassmann necklace) this
//! crate computes the Gabriel quiver and relations of the boundary algebra,
//! builds a consistent dimer model realising the permutation, and checks the
//! combinatorial formulas against a rewriting oracle on that model.

pub mod crosscheck;
pub mod dimer;
pub mod necklace;
pub mod perm;
pub mod plabic;
pub mod presentation;
pub mod rewrite;

pub use dimer::{DimerModel, Topology};
pub use necklace::{GrassmannNecklace, Subset};
pub use perm::{parse_permutation, CyclicInterval, Decoration, DecoratedPermutation};
