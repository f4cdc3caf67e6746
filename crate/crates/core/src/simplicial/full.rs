use std::collections::HashSet;

use num_traits::{One, Zero};

use super::complex::{ComplexPair, Simplex, SimplicialComplex};
use super::point::RationalPoint;
use super::subdivision::barycentric_subdivision;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};

/// `Ok` when every simplex of `k` whose vertices all lie in `l` is a simplex
/// of `l`; otherwise `NotFull` with the first such simplex.
pub fn is_full(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<()> {
    let inside = k.embed(l)?;
    let l_vertices: HashSet<usize> = inside
        .iter()
        .filter(|s| s.len() == 1)
        .map(|s| s[0])
        .collect();
    for s in k.all_simplices() {
        if s.iter().all(|v| l_vertices.contains(v)) && !inside.contains(s) {
            return Err(Error::NotFull(k.show(s)));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SimplexClass {
    InL,
    InN,
    /// `s = s′ ∪ s″` with `s′` in `L` and `s″` in `N`.
    Split(Simplex, Simplex),
}

/// Vertices of `k` belonging to `l`.
fn l_vertex_set(k: &SimplicialComplex, l: &SimplicialComplex) -> Result<HashSet<usize>> {
    l.labels().iter().map(|x| k.vertex(x)).collect()
}

/// Splits a simplex of `k` relative to a full subcomplex `l`.
pub fn classify_simplex(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    s: &[usize],
) -> Result<SimplexClass> {
    is_full(k, l)?;
    if !k.contains(s) {
        return Err(Error::NotSubcomplex(format!("{s:?}")));
    }
    let lv = l_vertex_set(k, l)?;
    let (inside, outside): (Simplex, Simplex) = s.iter().partition(|v| lv.contains(v));
    Ok(match (inside.is_empty(), outside.is_empty()) {
        (false, true) => SimplexClass::InL,
        (true, false) => SimplexClass::InN,
        _ => SimplexClass::Split(inside, outside),
    })
}

/// The largest subcomplex of `k` disjoint from `l`: simplices with no vertex in `l`.
pub fn complement_complex(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
) -> Result<SimplicialComplex> {
    let lv = l_vertex_set(k, l)?;
    k.subcomplex(
        k.all_simplices()
            .filter(|s| s.iter().all(|v| !lv.contains(v)))
            .cloned(),
    )
}

/// `X ∪ CA`: a fresh apex joined to every simplex of the subcomplex.
/// The apex is `*`, or `*` followed by primes if that label is taken.
pub fn cone_pair(pair: &ComplexPair) -> Result<(SimplicialComplex, String)> {
    let k = pair.complex();
    let mut apex = "*".to_string();
    while k.vertex(&apex).is_ok() {
        apex.push('\'');
    }
    let mut simplices: Vec<Vec<String>> = k
        .maximal_simplices()
        .iter()
        .map(|s| k.simplex_labels(s))
        .collect();
    simplices.push(vec![apex.clone()]);
    for s in pair.sub().all_simplices() {
        let mut labels = pair.sub().simplex_labels(s);
        labels.push(apex.clone());
        simplices.push(labels);
    }
    let mut vertices = k.labels().to_vec();
    vertices.push(apex.clone());
    Ok((SimplicialComplex::new(vertices, &simplices)?, apex))
}

#[derive(Clone, Debug)]
pub struct RetractionResult {
    /// Mass of the point on the vertices of `L`.
    pub a: Rational,
    pub alpha_prime: RationalPoint,
    pub alpha_out: RationalPoint,
    pub n_complex: SimplicialComplex,
    /// Simplices of `sd K` spanned by barycenters of simplices outside `L`.
    pub n1_complex: SimplicialComplex,
}

/// Pointwise data of the deformation of a neighbourhood of `|L|` onto `|L|`:
/// `α = a·α′ + (1 − a)·α″` and `H(α, t) = t·α′ + (1 − t)·α`.
pub fn retract_point(
    k: &SimplicialComplex,
    l: &SimplicialComplex,
    p: &RationalPoint,
    t: &Rational,
) -> Result<RetractionResult> {
    is_full(k, l)?;
    if t < &Rational::zero() || t > &Rational::one() {
        return Err(Error::Precondition(format!("t = {t} is outside [0, 1]")));
    }
    if !k.contains(&p.carrier()) {
        return Err(Error::InvalidPoint(format!(
            "support {} is not a simplex",
            k.show(&p.carrier())
        )));
    }
    let lv = l_vertex_set(k, l)?;
    let a: Rational = p
        .coords()
        .iter()
        .filter(|(v, _)| lv.contains(v))
        .map(|(_, x)| x.clone())
        .sum();
    if a.is_zero() {
        return Err(Error::PointInComplement);
    }
    let alpha_prime = RationalPoint::unchecked(
        p.coords()
            .iter()
            .filter(|(v, _)| lv.contains(v))
            .map(|(&v, x)| (v, x / &a)),
    )?;
    let alpha_out = if a.is_one() {
        p.clone()
    } else {
        RationalPoint::affine_combination(&[(t.clone(), &alpha_prime), (Rational::one() - t, p)])?
    };
    let n_complex = complement_complex(k, l)?;
    let sd = barycentric_subdivision(k, Some(l))?;
    let inside: HashSet<Simplex> = k.embed(l)?;
    let n1 = sd
        .sd_complex
        .all_simplices()
        .filter(|s| s.iter().all(|&v| !inside.contains(&sd.faces[v])))
        .cloned()
        .collect::<Vec<_>>();
    let n1_complex = sd.sd_complex.subcomplex(n1)?;
    Ok(RetractionResult {
        a,
        alpha_prime,
        alpha_out,
        n_complex,
        n1_complex,
    })
}
