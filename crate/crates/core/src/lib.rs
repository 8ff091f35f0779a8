//! Grover walks on regular graphs, line digraphs and their distance
//! digraphs, and the factorization of the squared walk of a
//! distance-regular graph with invertible adjacency matrix into commuting
//! exponentials of skew-adjacency matrices.
//!
//! Graph-side and arc-side identities are checked in exact integer
//! arithmetic; floating point enters with the eigenprojections.

pub mod arcs;
pub mod error;
pub mod factor;
pub mod graph;
pub mod linalg;
pub mod report;
pub mod spectral;
pub mod walks;

pub use error::{Error, Result};
