//! Exact combinatorics on cubic multimatrices and partitioned graphs.
//!
//! The crate provides, with certificates for every extremal answer:
//!
//! - 0/1 and rational-cost multimatrices with a bit-exact text format;
//! - multideterminants and complete search over their monomials;
//! - friendship structure on n-partite graphs: tensorization, the
//!   pairwise Hall condition, and decomposition into disjoint n-cliques;
//! - minimum line/r-plane covers vs maximum plane-independent sets of
//!   1s, plus a duality-gap scanner;
//! - exact axial multidimensional assignment with a reduction bound;
//! - multipartite matching vs vertex cover and all-pairs separators vs
//!   disjoint path systems.
//!
//! Solvers are deterministic: ties break toward the lexicographically
//! least certificate in the documented enumeration orders, and seeded
//! scans draw one RNG stream per instance index. The [`oracle`] module
//! holds independent reference implementations used to anchor the
//! solvers in tests.

mod bits;

pub mod assign;
pub mod det;
pub mod error;
pub mod friendship;
pub mod gen;
pub mod graph;
pub mod line;
pub mod matrix;
pub mod menger;
pub mod minimax;
pub mod oracle;
pub mod perm;
pub mod shape;
pub mod textio;

pub use error::{Error, Result};
pub use graph::PartitionedGraph;
pub use matrix::{BinaryMultimatrix, CostMultimatrix};
pub use shape::{Coord, Shape};
