use std::collections::{HashMap, HashSet};
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;

use super::product::{
    decode_product_simplex, staircase_product, swap, ProductChain, ProductSimplex,
};
use crate::algebra::IntMatrix;
use crate::error::{Error, Result};
use crate::simplicial::{CellHomology, FormalSum, SimplicialComplex, Symbol};

/// A simplex of the swap quotient, stored as the lexicographically smaller
/// of a pair list and its swap.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitSimplex {
    canonical: ProductSimplex,
}

impl OrbitSimplex {
    pub fn new(s: &[(usize, usize)]) -> Self {
        let t = swap(s);
        let canonical = if t.as_slice() < s { t } else { s.to_vec() };
        OrbitSimplex { canonical }
    }

    pub fn canonical(&self) -> &ProductSimplex {
        &self.canonical
    }

    /// Whether the pair list is its own swap (only diagonal pairs).
    pub fn is_diagonal_fixed(&self) -> bool {
        self.canonical.iter().all(|&(a, b)| a == b)
    }

    /// Whether some pair is diagonal.
    pub fn has_diagonal_pair(&self) -> bool {
        self.canonical.iter().any(|&(a, b)| a == b)
    }

    /// The orbit of the pair list sorted into increasing order, with the sign
    /// of the sorting permutation; `None` if degenerate.
    pub fn oriented(&self) -> Option<(i32, OrbitSimplex)> {
        let s = &self.canonical;
        if s.is_degenerate() {
            return None;
        }
        let mut order: Vec<usize> = (0..s.len()).collect();
        order.sort_by_key(|&i| s[i]);
        let inversions = (0..order.len())
            .tuple_combinations()
            .filter(|&(i, j)| order[i] > order[j])
            .count();
        let sorted: ProductSimplex = order.iter().map(|&i| s[i]).collect();
        let sign = if inversions % 2 == 0 { 1 } else { -1 };
        Some((sign, OrbitSimplex::new(&sorted)))
    }

    pub fn show(&self, k: &SimplicialComplex) -> String {
        let name = |v: usize| {
            if v < k.vertex_count() {
                k.label(v).to_string()
            } else {
                format!("#{v}")
            }
        };
        let pairs = self
            .canonical
            .iter()
            .map(|&(a, b)| format!("({},{})", name(a), name(b)))
            .join(",");
        format!("[{pairs}]")
    }
}

impl fmt::Debug for OrbitSimplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "orbit{:?}", self.canonical)
    }
}

impl Symbol for OrbitSimplex {
    fn arity(&self) -> usize {
        self.canonical.len()
    }
    fn is_degenerate(&self) -> bool {
        self.canonical.is_degenerate()
    }
    fn face(&self, i: usize) -> Self {
        OrbitSimplex::new(&self.canonical.face(i))
    }
}

pub type GableChain = FormalSum<OrbitSimplex>;

/// `p♯`: each pair list goes to its orbit, coefficients unchanged. The two
/// factors must be the same complex.
pub fn quotient_project(
    c: &ProductChain,
    left: &SimplicialComplex,
    right: &SimplicialComplex,
) -> Result<GableChain> {
    if left != right {
        return Err(Error::MixedComplexes(
            "the swap quotient needs a self-product".into(),
        ));
    }
    Ok(project(c))
}

pub(crate) fn project(c: &ProductChain) -> GableChain {
    c.map_symbols(c.dim(), |s| Some((1, OrbitSimplex::new(s))))
        .expect("same dimension")
}

/// Rewrites every orbit symbol on its increasing pair list, with sign.
pub fn orient_gable_chain(c: &GableChain) -> GableChain {
    c.map_symbols(c.dim(), |o| o.oriented())
        .expect("same dimension")
}

/// The swap quotient of the staircase self-product, as a complex of orbit
/// cells. Distinct cells may share a vertex set (`{(a,b),(c,d)}` and
/// `{(b,a),(c,d)}`), so cells are kept as orbits rather than vertex sets.
#[derive(Clone, Debug)]
pub struct GableComplex {
    base: SimplicialComplex,
    cells: Vec<Vec<OrbitSimplex>>,
    lookup: HashMap<OrbitSimplex, usize>,
}

impl GableComplex {
    pub fn new(k: &SimplicialComplex) -> Self {
        Self::from_product(k, &staircase_product(k, k))
    }

    fn from_product(k: &SimplicialComplex, product: &SimplicialComplex) -> Self {
        let n = k.vertex_count();
        let top = product.dim().map_or(0, |d| d + 1);
        let mut cells: Vec<Vec<OrbitSimplex>> = vec![Vec::new(); top];
        for (d, layer) in cells.iter_mut().enumerate() {
            let set: HashSet<OrbitSimplex> = product
                .simplices(d)
                .iter()
                .map(|s| OrbitSimplex::new(&decode_product_simplex(s, n)))
                .collect();
            *layer = set.into_iter().sorted().collect();
        }
        let lookup = cells
            .iter()
            .flat_map(|l| l.iter().enumerate().map(|(i, o)| (o.clone(), i)))
            .collect();
        GableComplex {
            base: k.clone(),
            cells,
            lookup,
        }
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.base
    }

    pub fn dim(&self) -> Option<usize> {
        self.cells.len().checked_sub(1)
    }

    pub fn cells(&self, d: usize) -> &[OrbitSimplex] {
        self.cells.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn all_cells(&self) -> impl Iterator<Item = &OrbitSimplex> {
        self.cells.iter().flatten()
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    pub fn contains(&self, o: &OrbitSimplex) -> bool {
        self.lookup.contains_key(o)
    }

    pub fn show(&self, o: &OrbitSimplex) -> String {
        o.show(&self.base)
    }

    /// Label of a vertex orbit `{a,b}`.
    pub fn vertex_label(&self, o: &OrbitSimplex) -> String {
        let (a, b) = o.canonical[0];
        format!("{{{},{}}}", self.base.label(a), self.base.label(b))
    }

    /// Face closure of a set of cells.
    pub fn closure(&self, cells: impl IntoIterator<Item = OrbitSimplex>) -> HashSet<OrbitSimplex> {
        let mut out = HashSet::new();
        let mut stack: Vec<OrbitSimplex> = cells.into_iter().collect();
        while let Some(o) = stack.pop() {
            if out.contains(&o) {
                continue;
            }
            if o.arity() > 1 {
                stack.extend((0..o.arity()).map(|i| o.face(i)));
            }
            out.insert(o);
        }
        out
    }

    /// Checks that a region consists of cells and is closed under faces.
    pub fn check_region(&self, region: &HashSet<OrbitSimplex>) -> Result<()> {
        for o in region {
            if !self.contains(o) {
                return Err(Error::OutsideGable(self.show(o)));
            }
            if o.arity() > 1 {
                if let Some(f) = (0..o.arity())
                    .map(|i| o.face(i))
                    .find(|f| !region.contains(f))
                {
                    return Err(Error::RegionNotClosed(format!(
                        "{} lacks its face {}",
                        self.show(o),
                        self.show(&f)
                    )));
                }
            }
        }
        Ok(())
    }

    fn relative_cells(&self, region: &HashSet<OrbitSimplex>, d: usize) -> Vec<OrbitSimplex> {
        self.cells(d)
            .iter()
            .filter(|o| !region.contains(o))
            .cloned()
            .collect()
    }

    fn relative_boundary(&self, region: &HashSet<OrbitSimplex>, d: usize) -> IntMatrix {
        let cols = self.relative_cells(region, d);
        if d == 0 {
            return IntMatrix::zeros(0, cols.len());
        }
        let rows: HashMap<OrbitSimplex, usize> = self
            .relative_cells(region, d - 1)
            .into_iter()
            .enumerate()
            .map(|(i, o)| (o, i))
            .collect();
        let mut m = IntMatrix::zeros(rows.len(), cols.len());
        for (j, o) in cols.iter().enumerate() {
            for i in 0..o.arity() {
                if let Some(&r) = rows.get(&o.face(i)) {
                    m[(r, j)] += BigInt::from(if i % 2 == 0 { 1 } else { -1 });
                }
            }
        }
        m
    }
}

/// Relative homology of `(gable, region)` in one degree.
#[derive(Clone, Debug)]
pub struct GableHomology {
    pub k: usize,
    pub factors: crate::algebra::InvariantFactors,
    pub generators: Vec<GableChain>,
    index: HashMap<OrbitSimplex, usize>,
    region: HashSet<OrbitSimplex>,
    inner: CellHomology,
}

impl GableHomology {
    pub fn group(&self) -> crate::algebra::FgAbelianGroup {
        self.inner.group()
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.inner.orders
    }

    /// Whether every nonzero term of `∂c` lies in the region.
    pub fn is_relative_cycle(&self, c: &GableChain) -> bool {
        c.dim() == 0
            || orient_gable_chain(&c.boundary())
                .iter()
                .all(|(o, _)| self.region.contains(o))
    }

    /// Class of a relative cycle; terms inside the region are ignored.
    pub fn class_of(&self, c: &GableChain) -> Result<Vec<BigInt>> {
        if c.is_zero() {
            return Ok(vec![BigInt::zero(); self.inner.orders.len()]);
        }
        if c.dim() != self.k {
            return Err(Error::Dimension(format!(
                "expected a {}-chain, got dimension {}",
                self.k,
                c.dim()
            )));
        }
        let mut v = vec![BigInt::zero(); self.index.len()];
        for (o, g) in orient_gable_chain(c).iter() {
            match self.index.get(o) {
                Some(&i) => v[i] += g,
                None if self.region.contains(o) => {}
                None => return Err(Error::OutsideGable(format!("{o:?}"))),
            }
        }
        self.inner.coordinates(&v)
    }
}

pub fn gable_homology(
    g: &GableComplex,
    region: &HashSet<OrbitSimplex>,
    k: usize,
) -> Result<GableHomology> {
    g.check_region(region)?;
    let inner = CellHomology::compute(
        &g.relative_boundary(region, k),
        &g.relative_boundary(region, k + 1),
    )?;
    let cells = g.relative_cells(region, k);
    let generators = inner
        .generators
        .iter()
        .map(|v| {
            GableChain::from_terms(k, v.iter().zip(&cells).map(|(c, o)| (c.clone(), o.clone())))
        })
        .collect::<Result<Vec<_>>>()?;
    let index = cells.into_iter().enumerate().map(|(i, o)| (o, i)).collect();
    Ok(GableHomology {
        k,
        factors: inner.factors.clone(),
        generators,
        index,
        region: region.clone(),
        inner,
    })
}

/// The staircase self-product, its swap quotient, and the subcomplex of the
/// quotient generated by orbits containing a diagonal pair.
#[derive(Clone, Debug)]
pub struct ProductComplex {
    pub product: SimplicialComplex,
    pub gable: GableComplex,
    pub diagonal_sub: HashSet<OrbitSimplex>,
}

pub fn product_complex(k: &SimplicialComplex) -> ProductComplex {
    let product = staircase_product(k, k);
    let gable = GableComplex::from_product(k, &product);
    let diagonal_sub = gable.closure(gable.all_cells().filter(|o| o.has_diagonal_pair()).cloned());
    ProductComplex {
        product,
        gable,
        diagonal_sub,
    }
}
