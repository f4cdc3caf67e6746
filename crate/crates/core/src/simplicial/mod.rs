//! Abstract simplicial complexes, normalized chains, relative homology over
//! the integers, barycentric subdivision and the full-subcomplex toolkit.

pub mod chain;
pub mod complex;
pub mod full;
pub mod homology;
pub mod point;
pub mod subdivision;

pub use chain::{sort_with_sign, Chain, FormalSum, Symbol};
pub use complex::{natural_cmp, ComplexPair, Simplex, SimplicialComplex};
pub use full::{
    classify_simplex, complement_complex, cone_pair, is_full, retract_point, RetractionResult,
    SimplexClass,
};
pub use homology::{
    dimension, homology, homology_table, induced_homology_map, induced_on, reduced_homology,
    resolve_vertex_map, CellHomology, Homology, VertexMap,
};
pub use point::{carrier, RationalPoint};
pub use subdivision::{
    barycentric_subdivision, subdivision_partition_check, PartitionReport, SubdivisionResult,
};
