use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;

use crate::algebra::rational::{convex_zero_combination, Rational};
use crate::error::Result;
use crate::shuffle::{GableComplex, OrbitSimplex};
use crate::simplicial::RationalPoint;

/// Whether the image of the simplex spanned by the pairs `(aₚ, bₚ)` meets the
/// diagonal, i.e. whether some convex weights give `Σ tₚ·aₚ = Σ tₚ·bₚ` once
/// vertices are placed by `realization`.
pub fn touches_diagonal<F>(s: &[(usize, usize)], realization: F) -> bool
where
    F: Fn(usize) -> RationalPoint,
{
    if s.iter().any(|(a, b)| a == b) {
        return true;
    }
    let points: Vec<(RationalPoint, RationalPoint)> = s
        .iter()
        .map(|&(a, b)| (realization(a), realization(b)))
        .collect();
    let axes: BTreeSet<usize> = points
        .iter()
        .flat_map(|(p, q)| p.coords().keys().chain(q.coords().keys()).copied())
        .collect();
    let differences: Vec<Vec<Rational>> = points
        .iter()
        .map(|(p, q)| axes.iter().map(|&v| p.coord(v) - q.coord(v)).collect())
        .collect();
    convex_zero_combination(&differences).is_some()
}

/// `touches_diagonal` with every vertex realized as its own basis vector.
pub fn touches_diagonal_standard(s: &[(usize, usize)]) -> bool {
    touches_diagonal(s, RationalPoint::vertex)
}

/// A region of the gable around the diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagonalRegion {
    /// The face closure of every orbit whose realization meets the diagonal.
    Touching,
    /// An explicit face-closed set of cells.
    Cells(HashSet<OrbitSimplex>),
}

impl DiagonalRegion {
    pub fn resolve(&self, gable: &GableComplex) -> Result<HashSet<OrbitSimplex>> {
        match self {
            DiagonalRegion::Touching => Ok(diagonal_region(gable)),
            DiagonalRegion::Cells(cells) => {
                gable.check_region(cells)?;
                Ok(cells.clone())
            }
        }
    }
}

/// Cells of the gable whose realization meets the diagonal.
pub fn touching_cells(gable: &GableComplex) -> Vec<OrbitSimplex> {
    let cells: Vec<&OrbitSimplex> = gable.all_cells().collect();
    cells
        .into_par_iter()
        .filter(|o| touches_diagonal_standard(o.canonical()))
        .cloned()
        .collect()
}

/// The smallest subcomplex of the gable containing every cell that meets
/// the diagonal.
pub fn diagonal_region(gable: &GableComplex) -> HashSet<OrbitSimplex> {
    gable.closure(touching_cells(gable))
}

/// `region` together with the face closure of `extra`.
pub fn enlarge_region(
    gable: &GableComplex,
    region: &HashSet<OrbitSimplex>,
    extra: impl IntoIterator<Item = OrbitSimplex>,
) -> HashSet<OrbitSimplex> {
    gable.closure(region.iter().cloned().chain(extra))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::shuffle::product_complex;
    use crate::simplicial::SimplicialComplex;

    #[test]
    fn examples() {
        assert!(!touches_diagonal_standard(&[(0, 1)]));
        assert!(touches_diagonal_standard(&[(0, 1), (1, 0)]));
        assert!(touches_diagonal_standard(&[(0, 1), (2, 2)]));
        assert!(!touches_diagonal_standard(&[(0, 1), (0, 2), (1, 2)]));
    }

    #[test]
    fn custom_realization() {
        // vertices 0 and 1 placed at the same point
        let same = |v: usize| {
            if v == 1 {
                RationalPoint::vertex(0)
            } else {
                RationalPoint::vertex(v)
            }
        };
        assert!(touches_diagonal(&[(0, 1)], same));
        let halfway = |v: usize| match v {
            2 => RationalPoint::unchecked([(0, rat(1, 2)), (1, rat(1, 2))]).unwrap(),
            _ => RationalPoint::vertex(v),
        };
        assert!(touches_diagonal(&[(0, 2), (1, 2)], halfway));
    }

    #[test]
    fn edge_gable_region() {
        let e = SimplicialComplex::from_strs(&[&["a", "b"]]).unwrap();
        let pc = product_complex(&e);
        let region = diagonal_region(&pc.gable);
        // everything but the vertex {a,b}, which the closure adds back
        assert_eq!(region.len(), pc.gable.cell_count());
        assert_eq!(touching_cells(&pc.gable).len(), pc.gable.cell_count() - 1);
    }
}
