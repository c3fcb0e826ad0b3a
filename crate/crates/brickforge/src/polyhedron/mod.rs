//! Special spines and their o-graph encoding.

mod build;
mod format;
mod homology;
mod ograph;
mod signature;
mod skeleton;
mod splice;
pub mod thicken;
mod validate;

pub use build::from_faces;
pub use format::{parse_poly, write_poly, ParseError};
pub use homology::{CellComplex, H1};
pub use ograph::{
    fourth, germ_index, other_index, perm_compose, perm_index, perm_inverse, Circle, Corner, Edge, End, Face, FaceSet,
    Mark, ParityUnionFind, PolyError, SpecialPolyhedron, SpineKind, Step, SurfaceKind, UnionFind, GERMS, OTHERS, PERMS,
};
pub use signature::{canonical_signature, decode_signature, CanonicalSignature, SignatureDecodeError};
pub use skeleton::{nuclear_collapse, three_distinct_faces, triple_hat, AtomSkeleton, Skeleton, SkeletonError};
pub use splice::{disjoint_union, splice, VertexPair};
pub use thicken::{
    manifold_orientable, region_germs, thicken, thicken_with, BoundaryComponent, SurfaceType, ThickenError, Thickening,
};
pub use validate::{
    analyze_hexagon, boundary_matches_marks, marked_hexagons, validate, Check, Hexagon, ValidationReport,
};
