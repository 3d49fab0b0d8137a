//! Landmark-based distance labelings for fast shortest-path queries on
//! large directed and undirected graphs.
//!
//! The crate provides:
//!
//! - [`graph`]: immutable CSR graphs, edge-list ingestion, BFS primitives,
//!   degree ordering, and edge-boundary counts;
//! - [`generators`]: seeded Erdős–Rényi and Chung-Lu power-law random
//!   graphs;
//! - [`labeling`]: the label structure and query, pruned labeling, the
//!   global-landmark + local-ball approximate builder with its radius and
//!   parameter rules, and a versioned binary label format;
//! - [`baselines`]: Thorup-Zwick-style and Das Sarma et al. sketches for
//!   comparison;
//! - [`eval`]: ground-truth sampling, stretch/size/query-cost metrics, and
//!   an exhaustive 2-hop cover verifier.
//!
//! Everything randomized takes an explicit 64-bit seed and is reproducible
//! bit-for-bit.

pub mod baselines;
pub mod eval;
pub mod generators;
pub mod graph;
pub mod labeling;

pub use graph::{degree_ordering, load_edge_list, write_edge_list, Direction, Distance, Graph};
pub use labeling::{build_approx, build_pruned, query_distance, LandmarkLabels};
