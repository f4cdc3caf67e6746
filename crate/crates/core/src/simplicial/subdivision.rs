use std::collections::HashMap;

use itertools::Itertools;
use num_traits::{One, Signed};
use serde::Serialize;

use super::complex::{Simplex, SimplicialComplex};
use super::point::RationalPoint;
use crate::algebra::rational::{determinant, solve_unique, Rational};
use crate::error::Result;

/// Barycentric subdivision of a complex, optionally with the induced
/// subdivision of a subcomplex.
#[derive(Clone, Debug)]
pub struct SubdivisionResult {
    pub sd_complex: SimplicialComplex,
    /// The simplex of the original complex behind each vertex of `sd_complex`.
    pub faces: Vec<Simplex>,
    /// Barycenter of each such simplex, as a point of the original complex.
    pub realization: Vec<RationalPoint>,
    /// `sd K|L`, when a subcomplex was given.
    pub induced_sub: Option<SimplicialComplex>,
}

impl SubdivisionResult {
    /// Vertex of `sd_complex` standing for the barycenter of `s`.
    pub fn barycenter_vertex(&self, s: &[usize]) -> Option<usize> {
        self.faces.iter().position(|f| f == s)
    }

    /// The realization of an open simplex of the subdivision: its barycenter.
    pub fn realize_center(&self, sd_simplex: &[usize]) -> RationalPoint {
        let w = Rational::new(1.into(), (sd_simplex.len() as i64).into());
        let terms: Vec<(Rational, &RationalPoint)> = sd_simplex
            .iter()
            .map(|&v| (w.clone(), &self.realization[v]))
            .collect();
        RationalPoint::affine_combination(&terms).expect("weights sum to one")
    }
}

/// Label of the barycenter vertex of `s`, e.g. `b[a,b]`.
pub fn barycenter_label(k: &SimplicialComplex, s: &[usize]) -> String {
    format!("b{}", k.show(s))
}

/// Flags `s_0 ⊂ s_1 ⊂ ... ⊂ s` ending at `s`, as lists of faces in increasing size.
fn flags_ending_at(s: &Simplex) -> Vec<Vec<Simplex>> {
    if s.len() == 1 {
        return vec![vec![s.clone()]];
    }
    let mut out = Vec::new();
    for i in 0..s.len() {
        let mut f = s.clone();
        f.remove(i);
        for mut flag in flags_ending_at(&f) {
            flag.push(s.clone());
            out.push(flag);
        }
    }
    out
}

pub fn barycentric_subdivision(
    k: &SimplicialComplex,
    l: Option<&SimplicialComplex>,
) -> Result<SubdivisionResult> {
    let sub_set = l.map(|l| k.embed(l)).transpose()?;
    // vertices ordered by dimension, then lexicographically: flags are increasing lists
    let faces: Vec<Simplex> = (0..=k.dim().unwrap_or(0))
        .flat_map(|d| k.simplices(d).to_vec())
        .collect();
    let position: HashMap<&Simplex, usize> =
        faces.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let labels: Vec<String> = faces.iter().map(|s| barycenter_label(k, s)).collect();
    let flags = k
        .maximal_simplices()
        .into_iter()
        .flat_map(|s| flags_ending_at(&s));
    let simplices: Vec<Simplex> = flags
        .map(|flag| flag.iter().map(|f| position[f]).collect())
        .collect();
    let sd_complex = SimplicialComplex::from_indexed(labels, simplices);
    let realization = faces.iter().map(|s| RationalPoint::barycenter(s)).collect();
    let induced_sub = match sub_set {
        Some(set) => {
            let inside = sd_complex
                .all_simplices()
                .filter(|s| s.iter().all(|&v| set.contains(&faces[v])))
                .cloned()
                .collect::<Vec<_>>();
            Some(sd_complex.subcomplex(inside)?)
        }
        None => None,
    };
    Ok(SubdivisionResult {
        sd_complex,
        faces,
        realization,
        induced_sub,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionEntry {
    pub simplex: Vec<String>,
    /// Open simplices of the subdivision whose realization lies in the open simplex.
    pub pieces: usize,
    /// Those of full dimension, with their volumes relative to the simplex.
    #[serde(serialize_with = "crate::io::rational_vec")]
    pub volumes: Vec<Rational>,
    #[serde(serialize_with = "crate::io::rational")]
    pub volume_sum: Rational,
    pub samples: usize,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub entries: Vec<PartitionEntry>,
    pub violations: Vec<String>,
    pub passed: bool,
}

/// Coordinates of a point restricted to the vertices of `s`.
fn chart(p: &RationalPoint, s: &[usize]) -> Vec<Rational> {
    s.iter().map(|&v| p.coord(v)).collect()
}

/// Volume of the simplex spanned by `pts` (given in the chart of `s`) relative to `|s|`.
fn relative_volume(pts: &[Vec<Rational>]) -> Rational {
    let d = pts.len() - 1;
    if d == 0 {
        return Rational::one();
    }
    // drop the last barycentric coordinate and take edge vectors from the first point
    let rows: Vec<Vec<Rational>> = pts[1..]
        .iter()
        .map(|q| (0..d).map(|i| &q[i] - &pts[0][i]).collect())
        .collect();
    determinant(&rows).abs()
}

/// Interior sample points of a `d`-simplex with denominators up to `d + 3`,
/// including points with tied coordinates.
fn interior_samples(d: usize) -> Vec<Vec<Rational>> {
    let mut out = Vec::new();
    for total in d + 1..=d + 3 {
        for parts in (0..d + 1).map(|_| 1..=total).multi_cartesian_product() {
            if parts.iter().sum::<usize>() == total {
                out.push(
                    parts
                        .iter()
                        .map(|&m| Rational::new((m as i64).into(), (total as i64).into()))
                        .collect(),
                );
            }
        }
    }
    out
}

/// Checks that the open simplices of `sd K` realized inside each open simplex
/// `s` of `K` partition it: pieces are distinct, full-dimensional pieces have
/// volumes summing to that of `s`, and every sampled interior point of `s`
/// lies in exactly one open piece.
pub fn subdivision_partition_check(
    k: &SimplicialComplex,
    sub: &SubdivisionResult,
) -> PartitionReport {
    let mut pieces_of: HashMap<Simplex, Vec<Simplex>> = HashMap::new();
    for s in sub.sd_complex.all_simplices() {
        let c = sub.realize_center(s).carrier();
        pieces_of.entry(c).or_default().push(s.clone());
    }
    let mut entries = Vec::new();
    let mut violations = Vec::new();
    for s in k.all_simplices() {
        let pieces = pieces_of.get(s).cloned().unwrap_or_default();
        let d = s.len() - 1;
        let charts = |piece: &Simplex| -> Vec<Vec<Rational>> {
            piece
                .iter()
                .map(|&v| chart(&sub.realization[v], s))
                .collect()
        };
        let volumes: Vec<Rational> = pieces
            .iter()
            .filter(|p| p.len() == s.len())
            .map(|p| relative_volume(&charts(p)))
            .collect();
        let volume_sum: Rational = volumes.iter().sum();
        let mut ok = !pieces.is_empty() && volume_sum.is_one() && pieces.iter().all_unique();
        let samples = if d <= 3 {
            interior_samples(d)
        } else {
            Vec::new()
        };
        for x in &samples {
            let hits = pieces
                .iter()
                .filter(|piece| {
                    let cols = charts(piece);
                    let a: Vec<Vec<Rational>> = (0..s.len())
                        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
                        .collect();
                    match solve_unique(&a, x) {
                        Some(lambda) => lambda.iter().all(|l| l.is_positive()),
                        None => false,
                    }
                })
                .count();
            if hits != 1 {
                ok = false;
                violations.push(format!(
                    "point {:?} of {} lies in {hits} open pieces",
                    x.iter().map(|q| q.to_string()).collect::<Vec<_>>(),
                    k.show(s)
                ));
            }
        }
        if !volume_sum.is_one() {
            violations.push(format!(
                "pieces of {} have total volume {volume_sum}",
                k.show(s)
            ));
        }
        if pieces.is_empty() {
            violations.push(format!("{} has no pieces", k.show(s)));
        }
        entries.push(PartitionEntry {
            simplex: k.simplex_labels(s),
            pieces: pieces.len(),
            volumes,
            volume_sum,
            samples: samples.len(),
            ok,
        });
    }
    let stray: usize = pieces_of.keys().filter(|c| !k.contains(c)).count();
    if stray > 0 {
        violations.push(format!("{stray} pieces are not carried by a simplex"));
    }
    let passed = violations.is_empty() && entries.iter().all(|e| e.ok);
    PartitionReport {
        entries,
        violations,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::catalog;

    #[test]
    fn point_and_edge() {
        let p = SimplicialComplex::from_strs(&[&["x"]]).unwrap();
        let sd = barycentric_subdivision(&p, None).unwrap();
        assert_eq!(sd.sd_complex.simplex_count(), 1);
        assert!(subdivision_partition_check(&p, &sd).passed);

        let e = SimplicialComplex::from_strs(&[&["a", "b"]]).unwrap();
        let sd = barycentric_subdivision(&e, None).unwrap();
        assert_eq!(sd.sd_complex.simplices(0).len(), 3);
        assert_eq!(sd.sd_complex.simplices(1).len(), 2);
        assert_eq!(sd.sd_complex.labels(), &["b[a]", "b[b]", "b[a,b]"]);
        let report = subdivision_partition_check(&e, &sd);
        assert!(report.passed);
        let edge = report
            .entries
            .iter()
            .find(|x| x.simplex.len() == 2)
            .unwrap();
        assert_eq!(edge.pieces, 3);
        assert_eq!(edge.volumes, vec![rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn triangle_has_six_pieces() {
        let t = catalog::simplex(2);
        let sd = barycentric_subdivision(&t, None).unwrap();
        assert_eq!(sd.sd_complex.simplices(2).len(), 6);
        let report = subdivision_partition_check(&t, &sd);
        assert!(report.passed, "{:?}", report.violations);
        let top = report
            .entries
            .iter()
            .find(|x| x.simplex.len() == 3)
            .unwrap();
        assert_eq!(top.volumes, vec![rat(1, 6); 6]);
        assert_eq!(top.pieces, 13);
    }

    #[test]
    fn barycenter_realization() {
        let t = catalog::simplex(2);
        let sd = barycentric_subdivision(&t, None).unwrap();
        let v = sd.barycenter_vertex(&[0, 1, 2]).unwrap();
        assert_eq!(sd.realization[v].coord(1), rat(1, 3));
    }

    #[test]
    fn induced_subdivision() {
        let t = catalog::simplex(2);
        let l = SimplicialComplex::from_strs(&[&["0", "1"]]).unwrap();
        let sd = barycentric_subdivision(&t, Some(&l)).unwrap();
        let sub = sd.induced_sub.unwrap();
        assert_eq!(sub.simplices(0).len(), 3);
        assert_eq!(sub.simplices(1).len(), 2);
        let bad = SimplicialComplex::from_strs(&[&["0", "9"]]).unwrap();
        assert!(barycentric_subdivision(&t, Some(&bad)).is_err());
    }
}
