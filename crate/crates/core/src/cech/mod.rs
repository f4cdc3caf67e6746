//! Covers of finite ground sets, their nerves and projections, and Čech
//! homology of a finite tower of covers as an inverse limit.

pub mod cover;
pub mod nerve;
pub mod tower;

pub use cover::{ball_cover, common_refinement, CoverPair, GroundPair, Metric};
pub use nerve::{all_witnesses, find_witness, nerve, projection, Projection, RefinementWitness};
pub use tower::{cech_cofinal_compare, cech_homology, CechHomology, CoverTower};
