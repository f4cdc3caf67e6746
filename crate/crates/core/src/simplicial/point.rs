use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::complex::{Simplex, SimplicialComplex};
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};

/// A point of the geometric realization in exact barycentric coordinates.
/// Only nonzero coordinates are stored, keyed by vertex index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    coords: BTreeMap<usize, Rational>,
}

impl RationalPoint {
    /// Validates nonnegativity, total mass one and that the support spans a simplex.
    pub fn new(
        k: &SimplicialComplex,
        coords: impl IntoIterator<Item = (usize, Rational)>,
    ) -> Result<Self> {
        let p = Self::unchecked(coords)?;
        p.validate(k)?;
        Ok(p)
    }

    /// Builds a point from labels.
    pub fn from_labels(k: &SimplicialComplex, coords: &[(&str, Rational)]) -> Result<Self> {
        let c = coords
            .iter()
            .map(|(l, x)| Ok((k.vertex(l)?, x.clone())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(k, c)
    }

    /// Sums repeated keys and drops zeros; only the coordinate sign and total are checked.
    pub(crate) fn unchecked(coords: impl IntoIterator<Item = (usize, Rational)>) -> Result<Self> {
        let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
        for (v, x) in coords {
            *map.entry(v).or_insert_with(Rational::zero) += x;
        }
        if let Some((v, _)) = map.iter().find(|(_, x)| x.is_negative()) {
            return Err(Error::InvalidPoint(format!(
                "negative coordinate at vertex {v}"
            )));
        }
        map.retain(|_, x| !x.is_zero());
        let total: Rational = map.values().sum();
        if !total.is_one() {
            return Err(Error::InvalidPoint(format!(
                "coordinates sum to {total}, not 1"
            )));
        }
        Ok(RationalPoint { coords: map })
    }

    fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        if let Some(&v) = self.coords.keys().find(|&&v| v >= k.vertex_count()) {
            return Err(Error::InvalidPoint(format!(
                "vertex index {v} out of range"
            )));
        }
        if !k.contains(&self.carrier()) {
            return Err(Error::InvalidPoint(format!(
                "support {} is not a simplex",
                k.show(&self.carrier())
            )));
        }
        Ok(())
    }

    /// The vertex point `v`.
    pub fn vertex(v: usize) -> Self {
        RationalPoint {
            coords: BTreeMap::from([(v, Rational::one())]),
        }
    }

    /// The barycenter of a simplex.
    pub fn barycenter(s: &[usize]) -> Self {
        let w = Rational::new(1.into(), (s.len() as i64).into());
        RationalPoint {
            coords: s.iter().map(|&v| (v, w.clone())).collect(),
        }
    }

    pub fn coord(&self, v: usize) -> Rational {
        self.coords.get(&v).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coords(&self) -> &BTreeMap<usize, Rational> {
        &self.coords
    }

    /// The support: the unique open simplex containing the point.
    pub fn carrier(&self) -> Simplex {
        self.coords.keys().copied().collect()
    }

    /// `Σ w_i·p_i` for weights summing to one.
    pub fn affine_combination(terms: &[(Rational, &RationalPoint)]) -> Result<Self> {
        let mut out: Vec<(usize, Rational)> = Vec::new();
        for (w, p) in terms {
            for (&v, x) in &p.coords {
                out.push((v, w * x));
            }
        }
        Self::unchecked(out)
    }

    /// Labelled coordinates as `p/q` strings.
    pub fn labelled(&self, k: &SimplicialComplex) -> BTreeMap<String, String> {
        self.coords
            .iter()
            .map(|(&v, x)| (k.label(v).to_string(), x.to_string()))
            .collect()
    }
}

impl fmt::Debug for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|(v, x)| format!("{v}:{x}"))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// The carrier of a point, as a sorted vertex list.
pub fn carrier(p: &RationalPoint) -> Simplex {
    p.carrier()
}
