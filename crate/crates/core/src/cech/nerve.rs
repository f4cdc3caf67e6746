use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::cover::{CoverPair, GroundPair};
use crate::algebra::GroupMorphism;
use crate::error::{Error, Result};
use crate::simplicial::{
    homology, induced_on, resolve_vertex_map, ComplexPair, SimplicialComplex, VertexMap,
};

/// Builds the nerve of a cover: one vertex per nonempty set, one simplex per
/// family of sets with a common point. The relative part consists of the
/// families of relative sets having a common point in `A`.
pub fn nerve(ground: &GroundPair, cover: &CoverPair) -> Result<ComplexPair> {
    cover.validate(ground)?;
    let names: Vec<&String> = cover.nonempty_names();
    let mut simplices: Vec<Vec<String>> = Vec::new();
    let mut relative: Vec<Vec<String>> = Vec::new();
    // depth-first over increasing name lists, carrying the running intersection
    let mut stack: Vec<(Vec<usize>, BTreeSet<String>)> = (0..names.len())
        .rev()
        .map(|i| (vec![i], cover.sets[names[i]].clone()))
        .collect();
    while let Some((family, common)) = stack.pop() {
        let labels: Vec<String> = family.iter().map(|&i| names[i].clone()).collect();
        if labels.iter().all(|n| cover.is_relative(n))
            && common.iter().any(|p| ground.subset_a().contains(p))
        {
            relative.push(labels.clone());
        }
        simplices.push(labels);
        let last = *family.last().expect("families are nonempty");
        for next in (last + 1..names.len()).rev() {
            let meet: BTreeSet<String> = common
                .intersection(&cover.sets[names[next]])
                .cloned()
                .collect();
            if !meet.is_empty() {
                let mut f = family.clone();
                f.push(next);
                stack.push((f, meet));
            }
        }
    }
    let vertices: Vec<String> = names.iter().map(|n| n.to_string()).collect();
    let complex = SimplicialComplex::new(vertices, &simplices)?;
    let sub_vertices: Vec<String> = relative
        .iter()
        .filter(|s| s.len() == 1)
        .map(|s| s[0].clone())
        .collect();
    let sub = SimplicialComplex::new(sub_vertices, &relative)?;
    ComplexPair::new(complex, sub)
}

/// An assignment of each nonempty fine set to a coarse set containing it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RefinementWitness {
    pub assignment: BTreeMap<String, String>,
}

impl RefinementWitness {
    /// Every set assigned to the set of the same name.
    pub fn identity(cover: &CoverPair) -> Self {
        RefinementWitness {
            assignment: cover
                .nonempty_names()
                .into_iter()
                .map(|n| (n.clone(), n.clone()))
                .collect(),
        }
    }

    /// Checks set-wise containment for every nonempty fine set, and that
    /// relative fine sets go to relative coarse sets.
    pub fn check(&self, fine: &CoverPair, coarse: &CoverPair) -> Result<()> {
        for name in fine.nonempty_names() {
            let target = self
                .assignment
                .get(name)
                .ok_or_else(|| Error::NotRefinement(format!("no coarse set assigned to {name}")))?;
            let big = coarse
                .set(target)
                .map_err(|_| Error::NotRefinement(format!("{target} is not a coarse set")))?;
            if !fine.sets[name].is_subset(big) {
                return Err(Error::NotRefinement(format!(
                    "{name} is not contained in {target}"
                )));
            }
            if fine.is_relative(name) && !coarse.is_relative(target) {
                return Err(Error::NotRefinement(format!(
                    "relative set {name} is assigned to non-relative {target}"
                )));
            }
        }
        Ok(())
    }

    pub fn vertex_map(&self) -> VertexMap {
        self.assignment
            .iter()
            .map(|(a, b)| (a.clone(), b.clone()))
            .collect()
    }
}

/// For each nonempty fine set, the admissible coarse sets in name order.
fn candidates(fine: &CoverPair, coarse: &CoverPair) -> Result<Vec<(String, Vec<String>)>> {
    fine.nonempty_names()
        .into_iter()
        .map(|name| {
            let set = &fine.sets[name];
            let relative = fine.is_relative(name);
            let options: Vec<String> = coarse
                .sets
                .iter()
                .filter(|(c, big)| set.is_subset(big) && (!relative || coarse.is_relative(c)))
                .map(|(c, _)| c.clone())
                .collect();
            if options.is_empty() {
                let kind = if relative { "relative " } else { "" };
                return Err(Error::NotRefinement(format!(
                    "{name} lies in no {kind}coarse set"
                )));
            }
            Ok((name.clone(), options))
        })
        .collect()
}

/// The witness choosing, for every fine set, the smallest admissible coarse name.
pub fn find_witness(fine: &CoverPair, coarse: &CoverPair) -> Result<RefinementWitness> {
    let assignment = candidates(fine, coarse)?
        .into_iter()
        .map(|(n, opts)| (n, opts[0].clone()))
        .collect();
    Ok(RefinementWitness { assignment })
}

/// Every valid witness.
pub fn all_witnesses(fine: &CoverPair, coarse: &CoverPair) -> Result<Vec<RefinementWitness>> {
    let cands = candidates(fine, coarse)?;
    let names: Vec<&String> = cands.iter().map(|(n, _)| n).collect();
    Ok(cands
        .iter()
        .map(|(_, opts)| opts.iter())
        .multi_cartesian_product()
        .map(|choice| RefinementWitness {
            assignment: names
                .iter()
                .zip(choice)
                .map(|(n, c)| ((*n).clone(), c.clone()))
                .collect(),
        })
        .collect())
}

/// A projection between nerves determined by a refinement witness.
#[derive(Clone, Debug)]
pub struct Projection {
    pub witness: RefinementWitness,
    pub source: ComplexPair,
    pub target: ComplexPair,
    /// Image of each source vertex, as target vertex indices.
    pub images: Vec<usize>,
}

impl Projection {
    /// The morphism induced on `H_k`.
    pub fn induced(&self, k: usize) -> Result<GroupMorphism> {
        induced_on(
            &self.images,
            &homology(&self.source, k)?,
            &homology(&self.target, k)?,
        )
    }
}

/// The projection from the nerve of `fine` to the nerve of `coarse`, using
/// the given witness or else the one from `find_witness`.
pub fn projection(
    ground: &GroundPair,
    fine: &CoverPair,
    coarse: &CoverPair,
    witness: Option<&RefinementWitness>,
) -> Result<Projection> {
    let witness = match witness {
        Some(w) => {
            w.check(fine, coarse)?;
            w.clone()
        }
        None => find_witness(fine, coarse)?,
    };
    let source = nerve(ground, fine)?;
    let target = nerve(ground, coarse)?;
    let images = resolve_vertex_map(&witness.vertex_map(), &source, &target).map_err(|e| {
        Error::Internal(format!(
            "a refinement witness did not give a simplicial map: {e}"
        ))
    })?;
    Ok(Projection {
        witness,
        source,
        target,
        images,
    })
}
