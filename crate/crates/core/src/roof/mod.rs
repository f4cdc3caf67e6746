//! The roof map on even-dimensional chains and its relative classes in the
//! gable modulo regions around the diagonal.

pub mod classes;
pub mod diagonal;
pub mod fundamental;
pub mod terms;

pub use classes::{
    classify, relative_cycle_class, representative_independence_check, roof_family,
    IndependenceReport, RelativeClass, RoofFamily, RoofLevel,
};
pub use diagonal::{
    diagonal_region, enlarge_region, touches_diagonal, touches_diagonal_standard, touching_cells,
    DiagonalRegion,
};
pub use fundamental::{fundamental_roof_check, FundamentalReport};
pub use terms::{ordered_pair_sum, roof, TermList};
