//! Fatgraphs (ribbon graphs), their isomorphisms, and the homology of the
//! fatgraph chain complex.
//!
//! A fatgraph is a multigraph together with a cyclic order of the edges
//! incident to each vertex; it describes a punctured oriented surface of
//! some genus `g` with `n` boundary cycles.  This crate provides:
//!
//! * a concrete fatgraph model built from ciliated vertices ([`Fatgraph`]),
//!   with edge contraction and boundary-cycle extraction;
//! * conversion to and from the combinatorial `(sigma0, sigma1, sigma2)`
//!   permutation form ([`CombinatorialForm`]);
//! * enumeration of isomorphisms and automorphisms ([`isomorphisms`]);
//! * generation of the full family of `(g, n)`-fatgraphs by recursive edge
//!   addition and contraction ([`mgn_graphs`]), plus an independent
//!   brute-force generator from permutation pairs ([`oracle_generate_from_permutations`]);
//! * the chain complex of orientable marked fatgraphs with its boundary
//!   operators ([`build_chain_complex`]), exact sparse rank computation, and
//!   Betti numbers of the underlying moduli space ([`betti_numbers`]).
//!
//! ```
//! use fatghom::{betti_numbers, build_chain_complex, verify_chain_property};
//!
//! // The moduli space of once-punctured tori has Betti numbers (1).
//! let complex = build_chain_complex(1, 1).unwrap();
//! assert!(verify_chain_property(&complex));
//! assert_eq!(betti_numbers(&complex).trimmed(), vec![1]);
//! ```
//!
//! ```
//! use fatghom::Fatgraph;
//!
//! // Two trivalent vertices joined by three edges: the cyclic orders decide
//! // the surface. This one is a three-holed sphere ...
//! let theta = Fatgraph::from_vertex_lists(&[vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
//! assert_eq!((theta.genus(), theta.num_boundary_cycles()), (0, 3));
//! // ... and this one is a once-punctured torus.
//! let torus = Fatgraph::from_vertex_lists(&[vec![0, 1, 2], vec![0, 1, 2]]).unwrap();
//! assert_eq!((torus.genus(), torus.num_boundary_cycles()), (1, 1));
//! ```

pub mod combinatorial;
pub mod counting;
pub mod fatgraph;
pub mod generation;
pub mod homology;
pub mod iso;
pub mod json;
pub mod matrix;
pub mod oracle;
pub mod perm;

pub use combinatorial::CombinatorialForm;
pub use counting::{counting_report, CountingReport};
pub use fatgraph::{
    BoundaryCycle, Corner, Edge, EdgeLabel, Endpoint, Fatgraph, Orientation, TopologicalSignature,
    Vertex,
};
pub use generation::{
    attach_slipknot, bridge_edges, dedup_isomorphs, mgn_graphs, mgn_trivalent_graphs, GraphFamily,
    OrientedEdge,
};
pub use homology::{
    betti_numbers, betti_numbers_with, build_chain_complex, build_chain_complex_from_family,
    compute_block, compute_boundary_operator, euler_characteristics, index_and_aut,
    marked_fatgraph_pool, phi, verify_chain_property, BettiTable, ChainComplex,
    EulerCharacteristics, MarkedFatgraphPool,
};
pub use iso::{
    are_isomorphic, automorphisms, compare_orientations, edge_orbits, first_isomorphism,
    is_orientable, is_orientation_reversing, iso_from_edge_map, isomorphisms,
    oriented_edge_pair_orbits, transform_boundary_cycle, Isomorphism,
};
pub use matrix::{rank_exact, rank_with_config, RankConfig, SparseIntMatrix};
pub use oracle::oracle_generate_from_permutations;
pub use perm::Perm;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("fatgraph has no vertices")]
    EmptyGraph,

    #[error("malformed edge labels: {0}")]
    MalformedLabels(String),

    #[error("fatgraph is not connected")]
    Disconnected,

    #[error("vertex {vertex} has valence {valence}, need at least 3")]
    LowValence { vertex: usize, valence: usize },

    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),

    #[error("edge {edge} is a loop and cannot be contracted")]
    LoopContraction { edge: usize },

    #[error("invalid permutations: {0}")]
    InvalidPermutations(String),

    #[error("edge map does not preserve the incidence relation")]
    NotIncidencePreserving,

    #[error("invalid surface signature g={g}, n={n}: need n > 0 and 2 - 2g - n < 0")]
    InvalidSignature { g: usize, n: usize },

    #[error("enumeration over {half_edges} half-edges exceeds the configured bound {max}")]
    InfeasibleSize { half_edges: usize, max: usize },

    #[error("transported boundary cycle not found in the target cycle list")]
    CycleNotFound,

    #[error("parse error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
