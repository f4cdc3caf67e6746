use std::collections::HashMap;

use rayon::prelude::*;

use super::cover::{CoverPair, GroundPair};
use super::nerve::{find_witness, nerve, RefinementWitness};
use crate::algebra::{
    inverse_limit, restricted_limit_compare, FinitePoset, InverseLimit, InverseSystem,
    LimitComparison,
};
use crate::error::{Error, Result};
use crate::simplicial::{homology, induced_on, resolve_vertex_map, ComplexPair, Homology};

/// Covers indexed by a finite quasi-order in which `a <= b` means that cover
/// `b` refines cover `a`, with a witness for every related pair.
#[derive(Clone, Debug)]
pub struct CoverTower {
    poset: FinitePoset,
    covers: Vec<CoverPair>,
    /// `(a, b) ->` witness sending the sets of cover `b` into cover `a`.
    witnesses: HashMap<(usize, usize), RefinementWitness>,
}

impl CoverTower {
    /// Validates every cover and every supplied witness; related pairs
    /// without a witness get the one from `find_witness`.
    pub fn new(
        ground: &GroundPair,
        poset: FinitePoset,
        covers: Vec<CoverPair>,
        mut witnesses: HashMap<(usize, usize), RefinementWitness>,
    ) -> Result<Self> {
        if covers.len() != poset.len() {
            return Err(Error::Precondition(format!(
                "{} covers for {} poset elements",
                covers.len(),
                poset.len()
            )));
        }
        for c in &covers {
            c.validate(ground)?;
        }
        for (&(a, b), w) in &witnesses {
            if a >= poset.len() || b >= poset.len() || !poset.leq(a, b) {
                return Err(Error::Precondition(format!(
                    "witness given for the unrelated pair ({a}, {b})"
                )));
            }
            w.check(&covers[b], &covers[a]).map_err(|e| {
                Error::NotRefinement(format!("{} <= {}: {e}", poset.label(a), poset.label(b)))
            })?;
        }
        let n = poset.len();
        for a in 0..n {
            for b in 0..n {
                if poset.leq(a, b) && !witnesses.contains_key(&(a, b)) {
                    let w = find_witness(&covers[b], &covers[a]).map_err(|e| {
                        Error::NotRefinement(format!(
                            "{} <= {}: {e}",
                            poset.label(a),
                            poset.label(b)
                        ))
                    })?;
                    witnesses.insert((a, b), w);
                }
            }
        }
        Ok(CoverTower {
            poset,
            covers,
            witnesses,
        })
    }

    /// A chain of covers, each refining the previous one.
    pub fn chain(ground: &GroundPair, covers: Vec<CoverPair>) -> Result<Self> {
        Self::new(
            ground,
            FinitePoset::chain(covers.len()),
            covers,
            HashMap::new(),
        )
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn covers(&self) -> &[CoverPair] {
        &self.covers
    }

    pub fn witness(&self, a: usize, b: usize) -> Option<&RefinementWitness> {
        self.witnesses.get(&(a, b))
    }
}

#[derive(Clone, Debug)]
pub struct CechHomology {
    pub k: usize,
    pub nerves: Vec<ComplexPair>,
    pub levels: Vec<Homology>,
    pub system: InverseSystem,
    pub limit: InverseLimit,
}

/// The inverse limit over the tower of the nerve homology groups `H_k`, with
/// the maps induced by the projections.
pub fn cech_homology(ground: &GroundPair, tower: &CoverTower, k: usize) -> Result<CechHomology> {
    let nerves = tower
        .covers
        .par_iter()
        .map(|c| nerve(ground, c))
        .collect::<Result<Vec<_>>>()?;
    let levels = nerves
        .par_iter()
        .map(|n| homology(n, k))
        .collect::<Result<Vec<_>>>()?;
    let mut maps = HashMap::new();
    for (&(a, b), w) in &tower.witnesses {
        let images = resolve_vertex_map(&w.vertex_map(), &nerves[b], &nerves[a])
            .map_err(|e| Error::Internal(format!("a projection is not simplicial: {e}")))?;
        maps.insert((a, b), induced_on(&images, &levels[b], &levels[a])?);
    }
    let groups = levels.iter().map(Homology::group).collect();
    let system = InverseSystem::new(tower.poset.clone(), groups, maps).map_err(|e| match e {
        Error::InconsistentSystem(msg) => {
            Error::Internal(format!("projections are not functorial on homology: {msg}"))
        }
        other => other,
    })?;
    let limit = inverse_limit(&system)?;
    Ok(CechHomology {
        k,
        nerves,
        levels,
        system,
        limit,
    })
}

/// Compares the Čech limit over the whole tower with the limit over a
/// sub-collection of covers.
pub fn cech_cofinal_compare(cech: &CechHomology, subset: &[String]) -> Result<LimitComparison> {
    restricted_limit_compare(&cech.system, subset)
}
