use std::collections::HashSet;

use num_bigint::BigInt;
use serde::Serialize;

use super::terms::{roof, TermList};
use crate::algebra::{GroupMorphism, IntMatrix, InvariantFactors};
use crate::error::{Error, Result};
use crate::shuffle::{
    cross_symbols, gable_homology, orient_gable_chain, GableChain, GableComplex, GableHomology,
    OrbitSimplex,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeClass {
    pub is_relative_cycle: bool,
    /// Coordinates in the homology generators of `(gable, region)`, reduced
    /// modulo the torsion orders; absent unless the chain is a relative cycle.
    #[serde(serialize_with = "option_bigints")]
    pub coordinates: Option<Vec<BigInt>>,
    #[serde(with = "crate::io::bigint_vec")]
    pub orders: Vec<BigInt>,
}

fn option_bigints<S: serde::Serializer>(
    v: &Option<Vec<BigInt>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => crate::io::bigint_vec::serialize(v, s),
        None => s.serialize_none(),
    }
}

fn check_on_gable(c: &GableChain, gable: &GableComplex) -> Result<()> {
    match orient_gable_chain(c)
        .iter()
        .find(|(o, _)| !gable.contains(o))
    {
        Some((o, _)) => Err(Error::OutsideGable(gable.show(o))),
        None => Ok(()),
    }
}

/// The relative class of `c` in an already computed homology group.
pub fn classify(h: &GableHomology, c: &GableChain) -> Result<RelativeClass> {
    let orders = h.orders().to_vec();
    if !h.is_relative_cycle(c) {
        return Ok(RelativeClass {
            is_relative_cycle: false,
            coordinates: None,
            orders,
        });
    }
    Ok(RelativeClass {
        is_relative_cycle: true,
        coordinates: Some(h.class_of(c)?),
        orders,
    })
}

/// Whether `c` is a cycle modulo `region`, and if so its class in
/// `H(gable, region)`.
pub fn relative_cycle_class(
    c: &GableChain,
    gable: &GableComplex,
    region: &HashSet<OrbitSimplex>,
) -> Result<RelativeClass> {
    check_on_gable(c, gable)?;
    classify(&gable_homology(gable, region, c.dim())?, c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndependenceReport {
    pub holds: bool,
    pub before: RelativeClass,
    pub after: RelativeClass,
    pub factors: InvariantFactors,
}

/// Compares the classes of `roof(σ)` and `roof(σ − ∂ν)` in `H(gable, region)`.
///
/// `σ` must be a cycle and the region must contain every orbit of
/// `p♯(νᵢ×νᵢ)` for each term `νᵢ` of `ν`.
pub fn representative_independence_check(
    sigma: &TermList,
    nu: &TermList,
    gable: &GableComplex,
    region: &HashSet<OrbitSimplex>,
) -> Result<IndependenceReport> {
    if nu.k() != sigma.k() + 1 {
        return Err(Error::Dimension(format!(
            "ν must have dimension {}, got {}",
            sigma.k() + 1,
            nu.k()
        )));
    }
    sigma.check_support(gable.base())?;
    nu.check_support(gable.base())?;
    if !sigma.is_cycle() {
        return Err(Error::NotACycle("σ has a nonzero boundary".into()));
    }
    for (_, s) in nu.terms() {
        // symbols rather than the projected chain, whose terms may cancel
        let missing = cross_symbols(s, s)
            .into_iter()
            .map(|(_, p)| OrbitSimplex::new(&p))
            .find(|o| !region.contains(o));
        if let Some(o) = missing {
            return Err(Error::Precondition(format!(
                "region misses the orbit {} of the square of {}",
                gable.show(&o),
                gable.base().show(s)
            )));
        }
    }
    let shifted = TermList::from_chain(&sigma.to_chain().sub(&nu.to_chain().boundary())?);
    let h = gable_homology(gable, region, 2 * sigma.k())?;
    let before = classify(&h, &roof(sigma)?)?;
    let after = classify(&h, &roof(&shifted)?)?;
    for (name, class) in [("roof(σ)", &before), ("roof(σ - ∂ν)", &after)] {
        if !class.is_relative_cycle {
            return Err(Error::Precondition(format!(
                "{name} is not a cycle modulo the region"
            )));
        }
    }
    Ok(IndependenceReport {
        holds: before.coordinates == after.coordinates,
        before,
        after,
        factors: h.factors.clone(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RoofLevel {
    pub factors: InvariantFactors,
    pub region_size: usize,
    pub class: RelativeClass,
}

#[derive(Clone, Debug)]
pub struct RoofFamily {
    pub chain: GableChain,
    pub levels: Vec<RoofLevel>,
    /// `maps[j]` is induced by the inclusion of region `j + 1` into region `j`.
    pub maps: Vec<GroupMorphism>,
    /// Whether `maps[j]` carries the class at level `j + 1` to the class at level `j`.
    pub compatible: Vec<bool>,
}

impl RoofFamily {
    pub fn all_compatible(&self) -> bool {
        self.compatible.iter().all(|&b| b)
    }
}

/// Classes of `roof(σ)` modulo each region of a decreasing sequence
/// `V₁ ⊇ V₂ ⊇ …`, with the inclusion-induced maps between consecutive levels.
pub fn roof_family(
    sigma: &TermList,
    gable: &GableComplex,
    regions: &[HashSet<OrbitSimplex>],
) -> Result<RoofFamily> {
    for j in 1..regions.len() {
        if !regions[j].is_subset(&regions[j - 1]) {
            return Err(Error::NotNested(j, j - 1));
        }
    }
    let chain = roof(sigma)?;
    check_on_gable(&chain, gable)?;
    let dim = chain.dim();
    let homologies = regions
        .iter()
        .map(|r| gable_homology(gable, r, dim))
        .collect::<Result<Vec<_>>>()?;
    let mut levels = Vec::new();
    for (j, h) in homologies.iter().enumerate() {
        let class = classify(h, &chain)?;
        if !class.is_relative_cycle {
            return Err(Error::Precondition(format!(
                "the roof is not a cycle modulo region {j}"
            )));
        }
        levels.push(RoofLevel {
            factors: h.factors.clone(),
            region_size: regions[j].len(),
            class,
        });
    }
    let mut maps = Vec::new();
    let mut compatible = Vec::new();
    for j in 1..homologies.len() {
        let (outer, inner) = (&homologies[j - 1], &homologies[j]);
        let columns = inner
            .generators
            .iter()
            .map(|g| outer.class_of(g))
            .collect::<Result<Vec<_>>>()?;
        let mut m = IntMatrix::zeros(outer.orders().len(), columns.len());
        for (c, col) in columns.iter().enumerate() {
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        let map = GroupMorphism::new(inner.group(), outer.group(), m)?;
        let image = map.apply(
            levels[j]
                .class
                .coordinates
                .as_deref()
                .expect("relative cycle"),
        );
        let expected = levels[j - 1]
            .class
            .coordinates
            .as_deref()
            .expect("relative cycle");
        let difference: Vec<BigInt> = image.iter().zip(expected).map(|(a, b)| a - b).collect();
        compatible.push(outer.group().is_zero_element(&difference));
        maps.push(map);
    }
    Ok(RoofFamily {
        chain,
        levels,
        maps,
        compatible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::roof::diagonal::{diagonal_region, enlarge_region};
    use crate::shuffle::product_complex;
    use crate::simplicial::SimplicialComplex;

    #[test]
    fn zero_chain_and_edge_example() {
        let e = SimplicialComplex::from_strs(&[&["a", "b"]]).unwrap();
        let pc = product_complex(&e);
        let region = diagonal_region(&pc.gable);
        let zero = relative_cycle_class(&GableChain::zero(0), &pc.gable, &region).unwrap();
        assert!(zero.is_relative_cycle);
        let sigma = TermList::from_small(0, &[(1, &[0]), (1, &[1])]).unwrap();
        let class = relative_cycle_class(&roof(&sigma).unwrap(), &pc.gable, &region).unwrap();
        assert!(class.is_relative_cycle);
        assert!(class.coordinates.unwrap().is_empty());
        // modulo the diagonal vertices alone, orbit(a,b) is still null-homologous
        let diagonal_vertices = pc
            .gable
            .cells(0)
            .iter()
            .filter(|o| o.is_diagonal_fixed())
            .cloned()
            .collect();
        let class =
            relative_cycle_class(&roof(&sigma).unwrap(), &pc.gable, &diagonal_vertices).unwrap();
        assert_eq!(class.coordinates, Some(vec![]));
    }

    #[test]
    fn independence_on_the_edge() {
        let e = SimplicialComplex::from_strs(&[&["a", "b"]]).unwrap();
        let pc = product_complex(&e);
        let region = diagonal_region(&pc.gable);
        let sigma = TermList::from_small(0, &[(1, &[0]), (1, &[1])]).unwrap();
        let nu = TermList::from_small(1, &[(1, &[0, 1])]).unwrap();
        assert!(
            representative_independence_check(&sigma, &nu, &pc.gable, &region)
                .unwrap()
                .holds
        );
        let none = TermList::from_small(1, &[]).unwrap();
        assert!(
            representative_independence_check(&sigma, &none, &pc.gable, &region)
                .unwrap()
                .holds
        );
        let small: HashSet<OrbitSimplex> = pc.gable.cells(0).iter().cloned().collect();
        assert!(matches!(
            representative_independence_check(&sigma, &nu, &pc.gable, &small),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn outside_support_rejected() {
        let e = SimplicialComplex::from_strs(&[&["a", "b"]]).unwrap();
        let pc = product_complex(&e);
        let stray = GableChain::symbol(OrbitSimplex::new(&[(0, 5)]));
        assert!(matches!(
            relative_cycle_class(&stray, &pc.gable, &HashSet::new()),
            Err(Error::OutsideGable(_))
        ));
    }

    #[test]
    fn sphere_family() {
        let m = catalog::boundary_tetrahedron();
        let pc = product_complex(&m);
        let sigma = TermList::from_chain(&catalog::fundamental_cycle(&m).unwrap());
        let inner = diagonal_region(&pc.gable);
        let chain = roof(&sigma).unwrap();
        let extra = chain
            .iter()
            .map(|(o, _)| o.clone())
            .filter(|o| !inner.contains(o))
            .take(1);
        let outer = enlarge_region(&pc.gable, &inner, extra);
        assert!(outer.len() > inner.len());
        let family = roof_family(&sigma, &pc.gable, &[outer.clone(), inner.clone()]).unwrap();
        assert!(family.all_compatible());
        assert_eq!(family.maps.len(), 1);
        // modulo the diagonal the roof is a generator of the top relative homology
        assert_eq!(family.levels[1].factors, InvariantFactors::free(1));
        assert_eq!(
            family.levels[1].class.coordinates.as_ref().unwrap().len(),
            1
        );
        let same = roof_family(&sigma, &pc.gable, &[inner.clone(), inner.clone()]).unwrap();
        assert_eq!(same.levels[0].class, same.levels[1].class);
        assert_eq!(
            roof_family(&sigma, &pc.gable, &[inner, outer]).unwrap_err(),
            Error::NotNested(1, 0)
        );
    }
}
