//! Small named triangulations used by tests, the CLI and the verification suites.

use std::collections::BTreeSet;

use crate::cech::{CoverPair, GroundPair};
use crate::error::{Error, Result};
use crate::simplicial::{homology, Chain, ComplexPair, SimplicialComplex};

fn build(simplices: &[Vec<usize>]) -> SimplicialComplex {
    let s: Vec<Vec<String>> = simplices
        .iter()
        .map(|s| s.iter().map(|v| v.to_string()).collect())
        .collect();
    SimplicialComplex::new(Vec::new(), &s).expect("catalog complexes are valid")
}

/// Boundary of the 3-simplex on vertices `0..=3`.
pub fn boundary_tetrahedron() -> SimplicialComplex {
    build(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
}

/// Six-vertex real projective plane on vertices `1..=6`.
pub fn projective_plane() -> SimplicialComplex {
    build(&[
        vec![1, 2, 3],
        vec![1, 3, 4],
        vec![1, 4, 5],
        vec![1, 5, 6],
        vec![1, 2, 6],
        vec![2, 3, 5],
        vec![2, 4, 5],
        vec![2, 4, 6],
        vec![3, 4, 6],
        vec![3, 5, 6],
    ])
}

/// Seven-vertex torus on vertices `0..=6`: triangles `{i, i+1, i+3}` and
/// `{i, i+2, i+3}` modulo 7.
pub fn torus() -> SimplicialComplex {
    let tri: Vec<Vec<usize>> = (0..7)
        .flat_map(|i| {
            [
                vec![i, (i + 1) % 7, (i + 3) % 7],
                vec![i, (i + 2) % 7, (i + 3) % 7],
            ]
        })
        .collect();
    build(&tri)
}

/// The cycle graph on vertices `0..n` (a circle for `n >= 3`).
pub fn cycle_graph(n: usize) -> SimplicialComplex {
    build(&(0..n).map(|i| vec![i, (i + 1) % n]).collect::<Vec<_>>())
}

/// The full simplex on vertices `0..=d`.
pub fn simplex(d: usize) -> SimplicialComplex {
    build(&[(0..=d).collect()])
}

/// Two isolated points `a` and `b`.
pub fn two_points() -> SimplicialComplex {
    SimplicialComplex::from_strs(&[&["a"], &["b"]]).expect("valid")
}

/// An oriented fundamental cycle of a closed orientable pseudomanifold: the
/// generator of the top homology, one `±1` term per top simplex, written on
/// sorted vertex lists.
pub fn fundamental_cycle(k: &SimplicialComplex) -> Result<Chain> {
    let top = k
        .dim()
        .ok_or_else(|| Error::Precondition("empty complex".into()))?;
    let h = homology::homology(&ComplexPair::absolute(k.clone()), top)?;
    let g = match h.generators.as_slice() {
        [g] if h.factors.torsion.is_empty() => g.clone(),
        _ => {
            return Err(Error::Precondition(
                "top homology is not infinite cyclic".into(),
            ))
        }
    };
    let unit = g.iter().all(|(_, c)| c.magnitude() == &1u32.into());
    if g.len() != k.simplices(top).len() || !unit {
        return Err(Error::Precondition(
            "top homology generator is not a fundamental cycle".into(),
        ));
    }
    Ok(g)
}

/// Six points `0..6` read cyclically, a combinatorial circle.
pub fn circle_points() -> GroundPair {
    GroundPair::new((0..6).map(|i| i.to_string()), std::iter::empty()).expect("valid ground set")
}

/// The six arcs `{i, i+1}` of [`circle_points`]; the nerve is a hexagon.
pub fn six_arcs() -> CoverPair {
    let sets = (0..6)
        .map(|i| {
            (
                format!("V{i}"),
                [i, (i + 1) % 6].iter().map(|p| p.to_string()).collect(),
            )
        })
        .collect();
    CoverPair::new(sets, BTreeSet::new())
}

/// Three arcs of four points each, overlapping in pairs, so that every arc
/// of [`six_arcs`] lies in one or two of them.
pub fn three_arcs() -> CoverPair {
    let sets = (0..3)
        .map(|j| {
            (
                format!("F{}", j + 1),
                (0..4).map(|d| ((2 * j + d) % 6).to_string()).collect(),
            )
        })
        .collect();
    CoverPair::new(sets, BTreeSet::new())
}
