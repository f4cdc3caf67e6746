use std::collections::BTreeMap;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// An ordered list of entries usable as a chain generator. Entries may repeat;
/// a symbol with a repeated entry is degenerate and counts as zero.
pub trait Symbol: Clone + Ord + Debug {
    /// Number of entries (dimension + 1).
    fn arity(&self) -> usize;
    fn is_degenerate(&self) -> bool;
    /// The symbol with entry `i` deleted.
    fn face(&self, i: usize) -> Self;
}

fn has_repeat<T: Ord + Clone>(v: &[T]) -> bool {
    let mut sorted = v.to_vec();
    sorted.sort();
    sorted.windows(2).any(|w| w[0] == w[1])
}

impl Symbol for Vec<usize> {
    fn arity(&self) -> usize {
        self.len()
    }
    fn is_degenerate(&self) -> bool {
        has_repeat(self)
    }
    fn face(&self, i: usize) -> Self {
        let mut f = self.clone();
        f.remove(i);
        f
    }
}

impl Symbol for Vec<(usize, usize)> {
    fn arity(&self) -> usize {
        self.len()
    }
    fn is_degenerate(&self) -> bool {
        has_repeat(self)
    }
    fn face(&self, i: usize) -> Self {
        let mut f = self.clone();
        f.remove(i);
        f
    }
}

/// A normalized integer chain of a fixed dimension: zero coefficients and
/// degenerate symbols never appear.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FormalSum<S: Symbol> {
    dim: usize,
    terms: BTreeMap<S, BigInt>,
}

/// A chain on ordered vertex-index symbols of a simplicial complex.
pub type Chain = FormalSum<Vec<usize>>;

impl<S: Symbol> FormalSum<S> {
    pub fn zero(dim: usize) -> Self {
        FormalSum {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (BigInt, S)>) -> Result<Self> {
        let mut c = Self::zero(dim);
        for (g, s) in terms {
            c.add_term(g, s)?;
        }
        Ok(c)
    }

    /// A single symbol with coefficient one.
    pub fn symbol(s: S) -> Self {
        let dim = s.arity().saturating_sub(1);
        let mut c = Self::zero(dim);
        c.add_term(BigInt::one(), s).expect("arity matches");
        c
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&S, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &S) -> BigInt {
        self.terms.get(s).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, g: BigInt, s: S) -> Result<()> {
        if s.arity() != self.dim + 1 {
            return Err(Error::Dimension(format!(
                "symbol {s:?} does not have {} entries",
                self.dim + 1
            )));
        }
        if g.is_zero() || s.is_degenerate() {
            return Ok(());
        }
        let slot = self.terms.entry(s);
        match slot {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(g);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += g;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::Dimension(format!(
                "adding chains of dimensions {} and {}",
                self.dim, other.dim
            )));
        }
        let mut out = self.clone();
        for (s, g) in &other.terms {
            out.add_term(g.clone(), s.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        FormalSum {
            dim: self.dim,
            terms: self.terms.iter().map(|(s, g)| (s.clone(), g * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    /// Applies a symbol map with a sign; `None` images are dropped.
    pub fn map_symbols<T: Symbol>(
        &self,
        dim: usize,
        mut f: impl FnMut(&S) -> Option<(i32, T)>,
    ) -> Result<FormalSum<T>> {
        let mut out = FormalSum::zero(dim);
        for (s, g) in &self.terms {
            if let Some((sign, t)) = f(s) {
                out.add_term(g * sign, t)?;
            }
        }
        Ok(out)
    }

    /// Alternating sum of faces. The boundary of a 0-chain is the zero 0-chain.
    pub fn boundary(&self) -> Self {
        if self.dim == 0 {
            return Self::zero(0);
        }
        let mut out = Self::zero(self.dim - 1);
        for (s, g) in &self.terms {
            for i in 0..s.arity() {
                let face = s.face(i);
                let coef = if i % 2 == 0 { g.clone() } else { -g };
                out.add_term(coef, face)
                    .expect("faces have the right arity");
            }
        }
        out
    }

    /// Keeps only the terms whose symbol satisfies the predicate.
    pub fn filter(&self, mut keep: impl FnMut(&S) -> bool) -> Self {
        FormalSum {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(s, _)| keep(s))
                .map(|(s, g)| (s.clone(), g.clone()))
                .collect(),
        }
    }
}

/// Sorts a symbol, returning the permutation sign, or `None` if degenerate.
pub fn sort_with_sign(s: &[usize]) -> Option<(i32, Simplex)> {
    let mut v = s.to_vec();
    let mut sign = 1;
    // insertion sort keeps track of transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((sign, v))
    }
}

impl Chain {
    /// Rewrites every symbol as its sorted simplex times the sign of the
    /// sorting permutation (the oriented simplicial chain it represents).
    pub fn oriented(&self) -> Chain {
        self.map_symbols(self.dim, |s| sort_with_sign(s))
            .expect("same dimension")
    }

    /// Checks that every symbol's vertex set spans a simplex of `k`.
    pub fn check_support(&self, k: &SimplicialComplex) -> Result<()> {
        for (s, _) in self.iter() {
            if s.iter().any(|&v| v >= k.vertex_count()) {
                return Err(Error::InvalidComplex(format!(
                    "symbol {s:?} uses an unknown vertex"
                )));
            }
            let mut set = s.clone();
            set.sort_unstable();
            set.dedup();
            if !k.contains(&set) {
                return Err(Error::NotSubcomplex(k.show(&set)));
            }
        }
        Ok(())
    }

    /// Builds a chain from labelled symbols over `k`.
    pub fn from_labels(
        k: &SimplicialComplex,
        dim: usize,
        terms: &[(i64, Vec<&str>)],
    ) -> Result<Chain> {
        let mut c = Chain::zero(dim);
        for (g, labels) in terms {
            let s = labels
                .iter()
                .map(|l| k.vertex(l))
                .collect::<Result<Vec<_>>>()?;
            c.add_term(BigInt::from(*g), s)?;
        }
        c.check_support(k)?;
        Ok(c)
    }

    /// Terms rendered with labels, in the chain's order.
    pub fn labelled_terms(&self, k: &SimplicialComplex) -> Vec<(BigInt, Vec<String>)> {
        self.iter()
            .map(|(s, g)| (g.clone(), k.simplex_labels(s)))
            .collect()
    }
}
