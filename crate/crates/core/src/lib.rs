//! Exact integral computations for simplicial complexes, shuffle products,
//! swap quotients, the roof map and inverse systems of Čech nerves.

pub mod algebra;
pub mod catalog;
pub mod cech;
pub mod error;
pub mod io;
pub mod roof;
pub mod shuffle;
pub mod simplicial;

pub use error::{Error, Result};
