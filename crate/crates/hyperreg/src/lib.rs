//! Regularity machinery for 3-uniform hypergraph complexes at desk scale:
//! bipartite and triad regularity verifiers, exact labelled copy and
//! extension counting with their predicted counterparts, seeded random
//! models, partition classification with reduced hypergraphs, a constructive
//! embedder, and an exact Ramsey search for tiny patterns.

pub mod bits;
pub mod complex;
pub mod counting;
pub mod density;
pub mod embed;
pub mod error;
pub mod format;
pub mod graph;
pub mod hypergraph;
pub mod models;
mod par;
pub mod partition;
pub mod rng;
pub mod triad;

pub use complex::{close_complex, degree_profile, Complex, DegreeProfile};
pub use error::{Error, Result};
pub use format::{parse_complex, serialize_complex};
pub use graph::{BipartiteGraph, KPartiteGraph, Vertex};
pub use hypergraph::{Hypergraph3, TripleColouring};
