use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::snf::{column_hermite_basis, integer_kernel, smith_with, IntegerSolver, SnfFlags};
use crate::error::{Error, Result};

/// A finitely generated abelian group `Z^gens / span(relation columns)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianGroup {
    generators: usize,
    relations: IntMatrix,
}

impl FgAbelianGroup {
    pub fn new(generators: usize, relations: IntMatrix) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::Dimension(format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                generators
            )));
        }
        Ok(FgAbelianGroup {
            generators,
            relations,
        })
    }

    /// `Z^n`
    pub fn free(n: usize) -> Self {
        FgAbelianGroup {
            generators: n,
            relations: IntMatrix::zeros(n, 0),
        }
    }

    pub fn trivial() -> Self {
        Self::free(0)
    }

    /// `Z/o_1 + Z/o_2 + ...` with `0` meaning a free summand.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let torsion: Vec<usize> = (0..n).filter(|&i| !orders[i].is_zero()).collect();
        let mut rel = IntMatrix::zeros(n, torsion.len());
        for (c, &i) in torsion.iter().enumerate() {
            rel[(i, c)] = orders[i].clone();
        }
        FgAbelianGroup {
            generators: n,
            relations: rel,
        }
    }

    pub fn generator_count(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    /// Direct sum; generators and relations are concatenated block-wise.
    pub fn direct_sum(groups: &[&FgAbelianGroup]) -> FgAbelianGroup {
        let blocks: Vec<&IntMatrix> = groups.iter().map(|g| &g.relations).collect();
        FgAbelianGroup {
            generators: groups.iter().map(|g| g.generators).sum(),
            relations: IntMatrix::block_diag(&blocks),
        }
    }

    pub fn invariant_factors(&self) -> InvariantFactors {
        invariant_factors(self)
    }

    /// Whether `x` (generator coordinates) is zero in the group.
    pub fn is_zero_element(&self, x: &[BigInt]) -> bool {
        if x.iter().all(Zero::is_zero) {
            return true;
        }
        IntegerSolver::new(&self.relations).contains(x)
    }

    pub fn solver(&self) -> IntegerSolver {
        IntegerSolver::new(&self.relations)
    }
}

/// Canonical decomposition `Z^free_rank + Z/d_1 + ... + Z/d_t` with
/// `d_1 | d_2 | ... | d_t` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantFactors {
    pub free_rank: usize,
    #[serde(with = "crate::io::bigint_vec")]
    pub torsion: Vec<BigInt>,
}

impl InvariantFactors {
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Result<Self> {
        if torsion.iter().any(|d| d <= &BigInt::one()) {
            return Err(Error::Dimension(
                "torsion factors must be at least 2".into(),
            ));
        }
        if torsion.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
            return Err(Error::Dimension(
                "torsion factors must form a divisibility chain".into(),
            ));
        }
        Ok(InvariantFactors { free_rank, torsion })
    }

    pub fn free(rank: usize) -> Self {
        InvariantFactors {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn from_small(free_rank: usize, torsion: &[i64]) -> Self {
        Self::new(
            free_rank,
            torsion.iter().map(|&d| BigInt::from(d)).collect(),
        )
        .expect("valid invariant factors")
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn invariant_factors(g: &FgAbelianGroup) -> InvariantFactors {
    let s = smith_with(g.relations(), SnfFlags::NONE);
    let rank = s.rank();
    let torsion = s
        .factors()
        .iter()
        .filter(|d| !d.is_one())
        .cloned()
        .collect();
    InvariantFactors {
        free_rank: g.generator_count() - rank,
        torsion,
    }
}

/// A homomorphism between presented groups, given by the images of the
/// source generators (one column per source generator).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMorphism {
    source: FgAbelianGroup,
    target: FgAbelianGroup,
    matrix: IntMatrix,
}

impl GroupMorphism {
    /// Checks shapes and well-definedness (relations go to relations).
    pub fn new(source: FgAbelianGroup, target: FgAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != target.generator_count() || matrix.cols() != source.generator_count() {
            return Err(Error::MalformedMorphism(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                target.generator_count(),
                source.generator_count()
            )));
        }
        let images = matrix.mul(source.relations())?;
        let solver = target.solver();
        for (j, col) in images.columns().iter().enumerate() {
            if col.iter().any(|x| !x.is_zero()) && !solver.contains(col) {
                return Err(Error::MalformedMorphism(format!(
                    "source relation {j} maps to a nonzero element"
                )));
            }
        }
        Ok(GroupMorphism {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FgAbelianGroup) -> Self {
        GroupMorphism {
            source: g.clone(),
            target: g.clone(),
            matrix: IntMatrix::identity(g.generator_count()),
        }
    }

    pub fn zero(source: &FgAbelianGroup, target: &FgAbelianGroup) -> Self {
        GroupMorphism {
            source: source.clone(),
            target: target.clone(),
            matrix: IntMatrix::zeros(target.generator_count(), source.generator_count()),
        }
    }

    pub fn source(&self) -> &FgAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbelianGroup {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix
            .mul_vec(x)
            .expect("argument length matches source")
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &GroupMorphism) -> Result<GroupMorphism> {
        if inner.target.generator_count() != self.source.generator_count() {
            return Err(Error::MalformedMorphism(
                "composition of incompatible morphisms".into(),
            ));
        }
        Ok(GroupMorphism {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.mul(&inner.matrix)?,
        })
    }

    /// Equality as homomorphisms: every generator image agrees modulo the
    /// target relations.
    pub fn equals_mod_relations(&self, other: &GroupMorphism) -> bool {
        if self.matrix.shape() != other.matrix.shape() {
            return false;
        }
        let diff = self.matrix.sub(&other.matrix).unwrap();
        let solver = self.target.solver();
        diff.columns()
            .iter()
            .all(|c| c.iter().all(Zero::is_zero) || solver.contains(c))
    }

    pub fn is_zero(&self) -> bool {
        self.equals_mod_relations(&GroupMorphism::zero(&self.source, &self.target))
    }

    /// `coker = target / (relations + image)`
    pub fn cokernel(&self) -> FgAbelianGroup {
        let rel = self.target.relations().hstack(&self.matrix).unwrap();
        FgAbelianGroup::new(self.target.generator_count(), rel).unwrap()
    }

    pub fn is_injective(&self) -> bool {
        kernel(self)
            .map(|(k, _)| k.invariant_factors().is_trivial())
            .unwrap_or(false)
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().invariant_factors().is_trivial()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }
}

/// Kernel of a morphism, presented by a canonical (Hermite) basis of the
/// preimage lattice, together with its inclusion into the source.
pub fn kernel(f: &GroupMorphism) -> Result<(FgAbelianGroup, GroupMorphism)> {
    let n = f.source.generator_count();
    // x ∈ Z^n with f(x) ∈ span(target relations): kernel of [F | R_target]
    let stacked = f.matrix.hstack(f.target.relations())?;
    let ker = integer_kernel(&stacked);
    let top: Vec<usize> = (0..n).collect();
    let projected = ker.select_rows(&top);
    let basis = column_hermite_basis(&projected);
    let b = basis.cols();
    // express the source relations in the basis
    let solver = IntegerSolver::new(&basis);
    let mut rel_cols = Vec::new();
    for (j, col) in f.source.relations().columns().iter().enumerate() {
        let y = solver.solve(col).ok_or_else(|| {
            Error::MalformedMorphism(format!("source relation {j} does not map to zero"))
        })?;
        if y.iter().any(|x| !x.is_zero()) {
            rel_cols.push(y);
        }
    }
    let k = FgAbelianGroup::new(b, IntMatrix::from_columns(b, &rel_cols))?;
    let incl = GroupMorphism {
        source: k.clone(),
        target: f.source.clone(),
        matrix: basis,
    };
    Ok((k, incl))
}

/// Reduces coordinates on a diagonal presentation: entries with a nonzero
/// order are taken modulo it into `[0, order)`.
pub fn reduce_mod_orders(x: &mut [BigInt], orders: &[BigInt]) {
    for (xi, o) in x.iter_mut().zip(orders) {
        if !o.is_zero() {
            *xi = xi.mod_floor(o);
        }
    }
}

/// Normalizes the sign of a single vector so that its first nonzero entry is positive.
pub fn normalize_sign(v: &mut [BigInt]) {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
}
