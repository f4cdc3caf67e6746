//! Shuffles, the simplicial cross product, the staircase triangulation of
//! self-products and the chain-level projection onto the swap quotient.

pub mod gable;
pub mod paths;
pub mod product;

pub use gable::{
    gable_homology, orient_gable_chain, product_complex, quotient_project, GableChain,
    GableComplex, GableHomology, OrbitSimplex, ProductComplex,
};
pub use paths::{enumerate_paths, LatticePath, Step};
pub use product::{
    boundary_formula_defect, cross, cross_symbols, product_boundary, staircase_product, swap,
    ProductChain, ProductSimplex,
};
