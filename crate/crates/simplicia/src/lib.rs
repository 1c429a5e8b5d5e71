//! Combinatorial 2- and 3-manifolds as pure simplicial complexes, together with
//! the operations needed to turn a handful of census triangulations into large,
//! duplicate-free, labelled datasets:
//!
//! - [`complex`]: complexes, closures, links, Euler characteristic, GF(2) Betti
//!   numbers, orientability, manifold verification, and surface classification;
//! - [`moves`]: the 2D and 3D Pachner moves with validity checking and seeded
//!   random walks (topology-preserving augmentation);
//! - [`surgery`]: connected sums of closed surfaces (class-creating augmentation);
//! - [`subdivision`]: stellar, graded, proportional, and barycentric refinement;
//! - [`isomorphism`]: f-vector / Weisfeiler-Leman / exact-isomorphism staged
//!   deduplication;
//! - [`represent`]: 1-skeleton, dual graph, Hasse diagram, and incidence graph
//!   exports plus node feature encodings;
//! - [`pipeline`]: dataset records, JSONL serialization, class balancing,
//!   subdivision evaluation variants, splits, and the Euler-characteristic
//!   baseline.
//!
//! Every value is immutable after construction and every operation is a pure
//! function, so complexes can be shared and processed in parallel freely.

pub mod complex;
pub mod error;
mod fnv;
pub mod gf2;
pub mod isomorphism;
pub mod moves;
pub mod pipeline;
pub mod represent;
pub mod subdivision;
pub mod surgery;

pub use complex::{
    FVector, InvariantSummary, SeedSurface, Simplex, SimplicialComplex, SurfaceClass,
};
pub use error::Error;
pub use isomorphism::{are_isomorphic, deduplicate, incidence_graph, wl_hash, DedupReport, WlDigest};
pub use moves::{MoveDescriptor, MoveKind, WalkResult};
pub use pipeline::{BalanceConfig, DatasetRecord, Provenance, ProvenanceKind, Split};
pub use represent::{FeatureMatrix, GraphKind, NodeRole, RepresentationGraph};
pub use subdivision::SubdivisionScheme;
