pub mod bench;
pub mod bounds;
pub mod boxbridge;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod generate;
pub mod hypergraph;
pub mod par;
pub mod permutation;
pub mod suitability;
pub mod triangulation;

pub use error::{Error, ErrorClass, Result};
pub use generate::{generate, GeneratorSpec};
pub use hypergraph::{degeneracy_order, disjoint_pairs, line_graph, DisjointPair, Hypergraph, Kind};
pub use par::Exec;
pub use permutation::{Permutation, PermutationFamily};
pub use suitability::{
    random_suitable_family, verify_family, SuitabilityKind, Verdict, Violation, DEFAULT_RETRIES,
};
pub use triangulation::Triangulation;
