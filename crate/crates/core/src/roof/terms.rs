use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::shuffle::{cross_symbols, GableChain, OrbitSimplex};
use crate::simplicial::{sort_with_sign, Chain, Simplex, SimplicialComplex};

/// An ordered list `Σ gᵢσᵢ` of distinct oriented `k`-simplices with nonzero
/// coefficients.
///
/// Construction sorts each symbol's vertices (absorbing the permutation sign),
/// drops degenerate symbols, merges repeated symbols into the position of
/// their first occurrence and drops terms whose coefficient cancels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermList {
    k: usize,
    terms: Vec<(BigInt, Simplex)>,
}

impl TermList {
    pub fn new(k: usize, terms: impl IntoIterator<Item = (BigInt, Simplex)>) -> Result<Self> {
        let mut merged: Vec<(BigInt, Simplex)> = Vec::new();
        for (g, s) in terms {
            if s.len() != k + 1 {
                return Err(Error::Dimension(format!("term {s:?} is not a {k}-simplex")));
            }
            let Some((sign, s)) = sort_with_sign(&s) else {
                continue;
            };
            let g = g * sign;
            match merged.iter_mut().find(|(_, t)| *t == s) {
                Some((h, _)) => *h += g,
                None => merged.push((g, s)),
            }
        }
        merged.retain(|(g, _)| !g.is_zero());
        Ok(TermList { k, terms: merged })
    }

    pub fn from_small(k: usize, terms: &[(i64, &[usize])]) -> Result<Self> {
        Self::new(k, terms.iter().map(|(g, s)| (BigInt::from(*g), s.to_vec())))
    }

    /// The terms of a chain, in the chain's symbol order.
    pub fn from_chain(c: &Chain) -> Self {
        Self::new(c.dim(), c.iter().map(|(s, g)| (g.clone(), s.clone())))
            .expect("chain symbols have the right arity")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(BigInt, Simplex)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_chain(&self) -> Chain {
        Chain::from_terms(self.k, self.terms.iter().cloned()).expect("terms have the right arity")
    }

    /// The same terms in the order given by `order` (a permutation of positions).
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.len()
            || !order.iter().all_unique()
            || order.iter().any(|&i| i >= self.len())
        {
            return Err(Error::Precondition(format!(
                "{order:?} is not a permutation of {} terms",
                self.len()
            )));
        }
        Ok(TermList {
            k: self.k,
            terms: order.iter().map(|&i| self.terms[i].clone()).collect(),
        })
    }

    /// The list with the coefficient of term `i` multiplied by `c`.
    pub fn scale_term(&self, i: usize, c: &BigInt) -> Self {
        let mut terms = self.terms.clone();
        terms[i].0 *= c;
        terms.retain(|(g, _)| !g.is_zero());
        TermList { k: self.k, terms }
    }

    pub fn check_support(&self, complex: &SimplicialComplex) -> Result<()> {
        self.to_chain().check_support(complex)
    }

    /// Whether the boundary of the chain vanishes.
    pub fn is_cycle(&self) -> bool {
        self.to_chain().boundary().is_zero()
    }
}

/// `Σ_{i<j} gᵢgⱼ·p♯(σᵢ×σⱼ)` in the given term order, without the parity
/// check. For odd `k` the result depends on that order.
pub fn ordered_pair_sum(sigma: &TermList) -> GableChain {
    let dim = 2 * sigma.k;
    let terms = &sigma.terms;
    (0..terms.len())
        .tuple_combinations()
        .collect::<Vec<(usize, usize)>>()
        .into_par_iter()
        .map(|(i, j)| {
            let (gi, si) = &terms[i];
            let (gj, sj) = &terms[j];
            let g = gi * gj;
            let mut part = GableChain::zero(dim);
            for (sign, p) in cross_symbols(si, sj) {
                part.add_term(&g * sign, OrbitSimplex::new(&p))
                    .expect("product symbols have 2k + 1 pairs");
            }
            part
        })
        .reduce(
            || GableChain::zero(dim),
            |a, b| a.add(&b).expect("same dimension"),
        )
}

/// The roof `σ̂` of an even-dimensional term list.
pub fn roof(sigma: &TermList) -> Result<GableChain> {
    if sigma.k % 2 == 1 {
        return Err(Error::OddDimension(sigma.k));
    }
    Ok(ordered_pair_sum(sigma))
}
