//! Ear-slicing for hypergraph matchings.
//!
//! Partitions the vertex set of a 3-uniform 3-regular hypergraph into at most
//! one hyperedge plus a perfect matching of the shadow graph, using odd ear
//! decompositions of factor-critical graphs. Also covers the k-uniform
//! k-regular case and the bipartite subgraph variant, and emits certificates
//! that [`verify`] checks independently.

pub mod bipartite;
pub mod cli;
pub mod ear;
pub mod format;
pub mod gen;
pub mod hypergraph;
pub mod matching;
pub mod oracle;
pub mod partition;
pub mod verify;

pub use bipartite::{
    bipartite_perfect_matching, extract_disjoint_perfect_matchings, BipartiteGraph,
};
pub use ear::{odd_ear_decomposition, Ear, EarDecomposition, EarError};
pub use gen::{gen_3u3r, gen_bip_regular, gen_uniform_regular, Seed, SplitMix64};
pub use hypergraph::{ComponentPartition, Hypergraph, SimpleGraph, VertexId};
pub use matching::{
    component_bound_check, is_factor_critical, maximum_matching, perfect_matching,
    perfect_matching_avoiding, Matching,
};
pub use partition::{
    lemma1_matching, lemma2_partition, lu_subgraph, solve_3u3r, solve_components, solve_k_uniform,
    LuSubgraph, SolveError, TriMatchingPartition,
};
pub use verify::{verify, verify_lu, TriangleRule, VerifyOptions, VerifyReport};
