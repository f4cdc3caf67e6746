use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::group::{kernel, FgAbelianGroup, GroupMorphism};
use super::matrix::IntMatrix;
use super::poset::{cofinality_class, Cofinality, FinitePoset};
use super::snf::IntegerSolver;
use crate::error::{Error, Result};

/// A contravariant functor from a finite quasi-order into abelian groups:
/// for `a <= b` a morphism `group(b) -> group(a)`.
#[derive(Clone, Debug)]
pub struct InverseSystem {
    poset: FinitePoset,
    groups: Vec<FgAbelianGroup>,
    maps: HashMap<(usize, usize), GroupMorphism>,
}

impl InverseSystem {
    /// `maps` is keyed by `(a, b)` with `a <= b` and holds `group(b) -> group(a)`.
    /// Reflexive maps default to identities; missing strict maps are filled in
    /// by composing along intermediate elements. The result is validated.
    pub fn new(
        poset: FinitePoset,
        groups: Vec<FgAbelianGroup>,
        mut maps: HashMap<(usize, usize), GroupMorphism>,
    ) -> Result<Self> {
        let n = poset.len();
        if groups.len() != n {
            return Err(Error::InconsistentSystem(format!(
                "{} groups for {} poset elements",
                groups.len(),
                n
            )));
        }
        for (&(a, b), f) in &maps {
            if a >= n || b >= n || !poset.leq(a, b) {
                return Err(Error::InconsistentSystem(format!(
                    "map given for unrelated pair ({a}, {b})"
                )));
            }
            if f.source() != &groups[b] || f.target() != &groups[a] {
                return Err(Error::InconsistentSystem(format!(
                    "map for {} <= {} has the wrong source or target",
                    poset.label(a),
                    poset.label(b)
                )));
            }
        }
        for (a, g) in groups.iter().enumerate() {
            maps.entry((a, a))
                .or_insert_with(|| GroupMorphism::identity(g));
        }
        // fill in composites
        loop {
            let missing: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| poset.leq(a, b) && !maps.contains_key(&(a, b)))
                .collect();
            if missing.is_empty() {
                break;
            }
            let mut progress = false;
            for (a, b) in missing {
                let via = (0..n).find(|&c| {
                    c != a && c != b && maps.contains_key(&(a, c)) && maps.contains_key(&(c, b))
                });
                if let Some(c) = via {
                    let f = maps[&(a, c)].compose(&maps[&(c, b)])?;
                    maps.insert((a, b), f);
                    progress = true;
                }
            }
            if !progress {
                return Err(Error::InconsistentSystem(
                    "some related pairs have no map".into(),
                ));
            }
        }
        let sys = InverseSystem {
            poset,
            groups,
            maps,
        };
        sys.validate()?;
        Ok(sys)
    }

    fn validate(&self) -> Result<()> {
        let n = self.poset.len();
        for a in 0..n {
            if !self.maps[&(a, a)].equals_mod_relations(&GroupMorphism::identity(&self.groups[a])) {
                return Err(Error::InconsistentSystem(format!(
                    "map for {0} <= {0} is not the identity",
                    self.poset.label(a)
                )));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !self.poset.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if !self.poset.leq(b, c) {
                        continue;
                    }
                    let composite = self.maps[&(a, b)].compose(&self.maps[&(b, c)])?;
                    if !composite.equals_mod_relations(&self.maps[&(a, c)]) {
                        return Err(Error::InconsistentSystem(format!(
                            "maps do not compose: {} <= {} <= {}",
                            self.poset.label(a),
                            self.poset.label(b),
                            self.poset.label(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn group(&self, a: usize) -> &FgAbelianGroup {
        &self.groups[a]
    }

    pub fn groups(&self) -> &[FgAbelianGroup] {
        &self.groups
    }

    /// Morphism `group(b) -> group(a)` for `a <= b`.
    pub fn map_for(&self, a: usize, b: usize) -> Option<&GroupMorphism> {
        self.maps.get(&(a, b))
    }

    /// The system restricted to a sub-poset (elements listed by index).
    pub fn restrict(&self, subset: &[usize]) -> Result<InverseSystem> {
        let poset = self.poset.restrict(subset);
        let groups = subset.iter().map(|&i| self.groups[i].clone()).collect();
        let mut maps = HashMap::new();
        for (na, &a) in subset.iter().enumerate() {
            for (nb, &b) in subset.iter().enumerate() {
                if let Some(f) = self.maps.get(&(a, b)) {
                    maps.insert((na, nb), f.clone());
                }
            }
        }
        InverseSystem::new(poset, groups, maps)
    }

    fn product(&self) -> FgAbelianGroup {
        let refs: Vec<&FgAbelianGroup> = self.groups.iter().collect();
        FgAbelianGroup::direct_sum(&refs)
    }

    fn offsets(&self) -> Vec<usize> {
        let mut off = Vec::with_capacity(self.groups.len() + 1);
        let mut acc = 0;
        off.push(0);
        for g in &self.groups {
            acc += g.generator_count();
            off.push(acc);
        }
        off
    }
}

/// A compatible family: one generator-coordinate vector per poset element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitElement {
    pub components: Vec<Vec<BigInt>>,
}

impl LimitElement {
    /// Checks `component(a) == map(a <= b)(component(b))` modulo relations.
    pub fn is_compatible(&self, sys: &InverseSystem) -> bool {
        let p = sys.poset();
        p.strict_pairs().into_iter().all(|(a, b)| {
            let image = sys.map_for(a, b).unwrap().apply(&self.components[b]);
            let diff: Vec<BigInt> = image
                .iter()
                .zip(&self.components[a])
                .map(|(x, y)| x - y)
                .collect();
            sys.group(a).is_zero_element(&diff)
        })
    }
}

/// Limit of an inverse system: the group, its projections, the generators
/// written as compatible families, and the inclusion into the product.
#[derive(Clone, Debug)]
pub struct InverseLimit {
    pub group: FgAbelianGroup,
    pub projections: Vec<GroupMorphism>,
    pub basis: Vec<LimitElement>,
    pub inclusion: GroupMorphism,
}

impl InverseLimit {
    /// The unique `psi: K -> lim` with `projection(a) ∘ psi = cone[a]` for all `a`.
    /// Fails if the cone is not compatible with the system.
    pub fn factor(&self, sys: &InverseSystem, cone: &[GroupMorphism]) -> Result<GroupMorphism> {
        let n = sys.poset().len();
        if cone.len() != n {
            return Err(Error::Dimension(
                "cone needs one morphism per poset element".into(),
            ));
        }
        let source = cone[0].source().clone();
        for (a, b) in sys.poset().strict_pairs() {
            let composite = sys.map_for(a, b).unwrap().compose(&cone[b])?;
            if !composite.equals_mod_relations(&cone[a]) {
                return Err(Error::Precondition(format!(
                    "cone is not compatible along {} <= {}",
                    sys.poset().label(a),
                    sys.poset().label(b)
                )));
            }
        }
        let product = self.inclusion.target().clone();
        let lifted = self.inclusion.matrix().hstack(product.relations())?;
        let solver = IntegerSolver::new(&lifted);
        let b = self.group.generator_count();
        let mut columns = Vec::new();
        for j in 0..source.generator_count() {
            let stacked: Vec<BigInt> = cone.iter().flat_map(|f| f.matrix().column(j)).collect();
            let sol = solver
                .solve(&stacked)
                .ok_or_else(|| Error::Internal("compatible cone does not lift".into()))?;
            columns.push(sol[..b].to_vec());
        }
        GroupMorphism::new(
            source,
            self.group.clone(),
            IntMatrix::from_columns(b, &columns),
        )
    }
}

pub fn inverse_limit(sys: &InverseSystem) -> Result<InverseLimit> {
    let product = sys.product();
    let off = sys.offsets();
    let pairs = sys.poset().strict_pairs();
    let targets: Vec<&FgAbelianGroup> = pairs.iter().map(|&(a, _)| sys.group(a)).collect();
    let codomain = FgAbelianGroup::direct_sum(&targets);
    // (x) -> (x_a - map(a<=b) x_b) over strict pairs
    let mut delta = IntMatrix::zeros(codomain.generator_count(), product.generator_count());
    let mut row = 0;
    for &(a, b) in &pairs {
        let f = sys.map_for(a, b).unwrap().matrix();
        let ga = sys.group(a).generator_count();
        for i in 0..ga {
            delta[(row + i, off[a] + i)] += BigInt::from(1);
            for j in 0..f.cols() {
                delta[(row + i, off[b] + j)] -= &f[(i, j)];
            }
        }
        row += ga;
    }
    let delta = GroupMorphism::new(product.clone(), codomain, delta)?;
    let (group, inclusion) = kernel(&delta)?;
    let incl = inclusion.matrix();
    let n = sys.poset().len();
    let projections = (0..n)
        .map(|a| {
            let rows: Vec<usize> = (off[a]..off[a + 1]).collect();
            GroupMorphism::new(group.clone(), sys.group(a).clone(), incl.select_rows(&rows))
        })
        .collect::<Result<Vec<_>>>()?;
    let basis = (0..group.generator_count())
        .map(|j| {
            let col = incl.column(j);
            LimitElement {
                components: (0..n).map(|a| col[off[a]..off[a + 1]].to_vec()).collect(),
            }
        })
        .collect();
    Ok(InverseLimit {
        group,
        projections,
        basis,
        inclusion,
    })
}

#[derive(Clone, Debug)]
pub struct LimitComparison {
    pub full: InverseLimit,
    pub restricted: InverseLimit,
    /// Forgets the components outside the subset.
    pub comparison: GroupMorphism,
    pub is_iso: bool,
    pub cofinality: Cofinality,
}

pub fn restricted_limit_compare(sys: &InverseSystem, subset: &[String]) -> Result<LimitComparison> {
    if subset.is_empty() {
        return Err(Error::Precondition("subset must be nonempty".into()));
    }
    let idx = sys.poset().resolve(subset)?;
    let cofinality = cofinality_class(sys.poset(), subset)?;
    let sub = sys.restrict(&idx)?;
    let full = inverse_limit(sys)?;
    let restricted = inverse_limit(&sub)?;
    let off = sys.offsets();
    let sub_product = restricted.inclusion.target().clone();
    let lifted = restricted
        .inclusion
        .matrix()
        .hstack(sub_product.relations())?;
    let solver = IntegerSolver::new(&lifted);
    let b = restricted.group.generator_count();
    let mut columns = Vec::new();
    for basis in full.inclusion.matrix().columns() {
        let y: Vec<BigInt> = idx
            .iter()
            .flat_map(|&a| basis[off[a]..off[a + 1]].to_vec())
            .collect();
        let sol = solver
            .solve(&y)
            .ok_or_else(|| Error::Internal("restricted family is not a limit element".into()))?;
        columns.push(sol[..b].to_vec());
    }
    let comparison = GroupMorphism::new(
        full.group.clone(),
        restricted.group.clone(),
        IntMatrix::from_columns(b, &columns),
    )?;
    let is_iso = comparison.is_isomorphism();
    Ok(LimitComparison {
        full,
        restricted,
        comparison,
        is_iso,
        cofinality,
    })
}

/// Helper for tests and fixtures: scalar multiplication `Z -> Z`.
pub fn scalar_map(k: i64) -> GroupMorphism {
    let z = FgAbelianGroup::free(1);
    GroupMorphism::new(z.clone(), z, IntMatrix::from_rows(&[vec![k]])).unwrap()
}

/// Whether every component of the element is zero.
pub fn is_zero_family(e: &LimitElement) -> bool {
    e.components.iter().all(|c| c.iter().all(Zero::is_zero))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::group::InvariantFactors;

    fn ints(v: &[i64]) -> Vec<Vec<BigInt>> {
        v.iter().map(|&x| vec![BigInt::from(x)]).collect()
    }

    fn doubling_chain() -> InverseSystem {
        let p = FinitePoset::chain(3);
        let z = FgAbelianGroup::free(1);
        let mut maps = HashMap::new();
        maps.insert((0, 1), scalar_map(2));
        maps.insert((1, 2), scalar_map(2));
        InverseSystem::new(p, vec![z.clone(), z.clone(), z], maps).unwrap()
    }

    #[test]
    fn constant_system() {
        let p = FinitePoset::chain(3);
        let z = FgAbelianGroup::free(1);
        let sys = InverseSystem::new(p, vec![z.clone(), z.clone(), z], HashMap::new());
        // identity maps are not implied for strict pairs
        assert!(sys.is_err());
        let p = FinitePoset::chain(3);
        let z = FgAbelianGroup::free(1);
        let mut maps = HashMap::new();
        maps.insert((0, 1), scalar_map(1));
        maps.insert((1, 2), scalar_map(1));
        let sys = InverseSystem::new(p, vec![z.clone(), z.clone(), z], maps).unwrap();
        let lim = inverse_limit(&sys).unwrap();
        assert_eq!(lim.group.invariant_factors(), InvariantFactors::free(1));
        for proj in &lim.projections {
            assert_eq!(proj.matrix(), &IntMatrix::identity(1));
        }
    }

    #[test]
    fn doubling_chain_limit() {
        let sys = doubling_chain();
        assert_eq!(
            sys.map_for(0, 2).unwrap().matrix(),
            &IntMatrix::from_rows(&[vec![4]])
        );
        let lim = inverse_limit(&sys).unwrap();
        assert_eq!(lim.group.invariant_factors(), InvariantFactors::free(1));
        assert_eq!(
            lim.basis,
            vec![LimitElement {
                components: ints(&[4, 2, 1])
            }]
        );
        assert!(lim.basis[0].is_compatible(&sys));
    }

    #[test]
    fn cospan_limit() {
        // x_l = 2 x_1 = 3 x_2
        let p = FinitePoset::from_strs(&["l", "m1", "m2"], &[("l", "m1"), ("l", "m2")]).unwrap();
        let z = FgAbelianGroup::free(1);
        let mut maps = HashMap::new();
        maps.insert((0, 1), scalar_map(2));
        maps.insert((0, 2), scalar_map(3));
        let sys = InverseSystem::new(p, vec![z.clone(), z.clone(), z], maps).unwrap();
        let lim = inverse_limit(&sys).unwrap();
        assert_eq!(lim.group.invariant_factors(), InvariantFactors::free(1));
        assert_eq!(
            lim.basis,
            vec![LimitElement {
                components: ints(&[6, 3, 2])
            }]
        );
    }

    #[test]
    fn inconsistent_system_is_rejected() {
        let p = FinitePoset::chain(3);
        let z = FgAbelianGroup::free(1);
        let mut maps = HashMap::new();
        maps.insert((0, 1), scalar_map(2));
        maps.insert((1, 2), scalar_map(2));
        maps.insert((0, 2), scalar_map(3));
        let err = InverseSystem::new(p, vec![z.clone(), z.clone(), z], maps).unwrap_err();
        assert!(matches!(err, Error::InconsistentSystem(_)));
    }

    #[test]
    fn restriction_to_top_is_iso() {
        let sys = doubling_chain();
        let cmp = restricted_limit_compare(&sys, &["2".to_string()]).unwrap();
        assert_eq!(cmp.cofinality, Cofinality::Strong);
        assert!(cmp.is_iso);
        assert_eq!(cmp.comparison.matrix(), &IntMatrix::from_rows(&[vec![1]]));
    }

    #[test]
    fn restriction_to_bottom_is_not_iso() {
        let sys = doubling_chain();
        let cmp = restricted_limit_compare(&sys, &["0".to_string()]).unwrap();
        assert_eq!(cmp.cofinality, Cofinality::None);
        // (4,2,1) -> 4: injective but not onto
        assert!(!cmp.is_iso);
    }

    #[test]
    fn torsion_limit() {
        // Z/4 -> Z/2 reduction, twice: limit of Z/2 <- Z/4 <- Z/8 is Z/8
        let p = FinitePoset::chain(3);
        let g: Vec<FgAbelianGroup> = [2, 4, 8]
            .iter()
            .map(|&o| FgAbelianGroup::from_orders(&[BigInt::from(o)]))
            .collect();
        let mut maps = HashMap::new();
        maps.insert(
            (0, 1),
            GroupMorphism::new(g[1].clone(), g[0].clone(), IntMatrix::identity(1)).unwrap(),
        );
        maps.insert(
            (1, 2),
            GroupMorphism::new(g[2].clone(), g[1].clone(), IntMatrix::identity(1)).unwrap(),
        );
        let sys = InverseSystem::new(p, g, maps).unwrap();
        let lim = inverse_limit(&sys).unwrap();
        assert_eq!(
            lim.group.invariant_factors(),
            InvariantFactors::from_small(0, &[8])
        );
    }

    #[test]
    fn factorization_through_limit() {
        let sys = doubling_chain();
        let lim = inverse_limit(&sys).unwrap();
        // cone from Z: 1 -> (12, 6, 3)
        let z = FgAbelianGroup::free(1);
        let cone: Vec<GroupMorphism> = [12, 6, 3]
            .iter()
            .map(|&k| {
                GroupMorphism::new(z.clone(), z.clone(), IntMatrix::from_rows(&[vec![k]])).unwrap()
            })
            .collect();
        let psi = lim.factor(&sys, &cone).unwrap();
        assert_eq!(psi.matrix(), &IntMatrix::from_rows(&[vec![3]]));
        let bad: Vec<GroupMorphism> = [1, 1, 1].iter().map(|&k| scalar_map(k)).collect();
        assert!(lim.factor(&sys, &bad).is_err());
    }
}
