use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::chain::Chain;
use super::complex::{ComplexPair, Simplex, SimplicialComplex};
use crate::algebra::group::reduce_mod_orders;
use crate::algebra::snf::{smith_with, SnfFlags};
use crate::algebra::{FgAbelianGroup, GroupMorphism, IntMatrix, InvariantFactors};
use crate::error::{Error, Result};

/// Rejects negative dimensions.
pub fn dimension(k: i64) -> Result<usize> {
    usize::try_from(k).map_err(|_| Error::NegativeDimension(k))
}

/// Homology in one degree of a free chain complex, given `∂_k` and `∂_{k+1}`,
/// together with what is needed to read off the class of any cycle.
///
/// The group is presented as `⊕ Z/orders[i]` (order 0 is a free summand),
/// torsion summands first.
#[derive(Clone, Debug)]
pub struct CellHomology {
    pub factors: InvariantFactors,
    pub orders: Vec<BigInt>,
    /// One cycle per summand, as a coordinate vector over the `k`-cells.
    pub generators: Vec<Vec<BigInt>>,
    boundary: IntMatrix,
    v_inv: IntMatrix,
    rank: usize,
    u2: IntMatrix,
    kept: Vec<usize>,
}

impl CellHomology {
    /// `d_k` maps `k`-cells to `(k-1)`-cells, `d_k1` maps `(k+1)`-cells to `k`-cells.
    pub fn compute(d_k: &IntMatrix, d_k1: &IntMatrix) -> Result<Self> {
        let n = d_k.cols();
        if d_k1.rows() != n {
            return Err(Error::Dimension(format!(
                "boundary matrices do not compose: {} cells vs {} rows",
                n,
                d_k1.rows()
            )));
        }
        let first = smith_with(
            d_k,
            SnfFlags {
                u: false,
                u_inv: false,
                v: true,
                v_inv: true,
            },
        );
        let r = first.rank();
        let v = first.v.expect("requested");
        let v_inv = first.v_inv.expect("requested");
        let cycles: Vec<usize> = (r..n).collect();
        let z = v.select_cols(&cycles);
        let rel = v_inv.mul(d_k1)?.select_rows(&cycles);
        let second = smith_with(
            &rel,
            SnfFlags {
                u: true,
                u_inv: true,
                v: false,
                v_inv: false,
            },
        );
        let u2 = second.u.expect("requested");
        let u2_inv = second.u_inv.expect("requested");
        let m = n - r;
        let mut kept = Vec::new();
        let mut orders = Vec::new();
        for i in 0..m {
            let d = second.diagonal.get(i).cloned().unwrap_or_default();
            if !d.is_one() {
                kept.push(i);
                orders.push(d);
            }
        }
        // torsion first, free summands after: already the SNF order
        let generators = kept
            .iter()
            .map(|&i| z.mul_vec(&u2_inv.column(i)))
            .collect::<Result<Vec<_>>>()?;
        let free_rank = orders.iter().filter(|d| d.is_zero()).count();
        let torsion = orders.iter().filter(|d| !d.is_zero()).cloned().collect();
        let factors = InvariantFactors::new(free_rank, torsion)?;
        Ok(CellHomology {
            factors,
            orders,
            generators,
            boundary: d_k.clone(),
            v_inv,
            rank: r,
            u2,
            kept,
        })
    }

    pub fn group(&self) -> FgAbelianGroup {
        FgAbelianGroup::from_orders(&self.orders)
    }

    /// Class of a cycle given by cell coordinates, reduced modulo the orders.
    pub fn coordinates(&self, cycle: &[BigInt]) -> Result<Vec<BigInt>> {
        let b = self.boundary.mul_vec(cycle)?;
        if b.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotACycle("boundary is nonzero".into()));
        }
        let w: Vec<BigInt> = self.v_inv.mul_vec(cycle)?.split_off(self.rank);
        let y = self.u2.mul_vec(&w)?;
        let mut out: Vec<BigInt> = self.kept.iter().map(|&i| y[i].clone()).collect();
        reduce_mod_orders(&mut out, &self.orders);
        Ok(out)
    }
}

/// Relative `k`-cells of a pair, in order, with their positions.
fn cell_index(pair: &ComplexPair, k: usize) -> (Vec<Simplex>, HashMap<Simplex, usize>) {
    let cells = pair.relative_cells(k);
    let index = cells
        .iter()
        .enumerate()
        .map(|(i, s)| (s.clone(), i))
        .collect();
    (cells, index)
}

/// Relative boundary matrix `C_k(K, L) -> C_{k-1}(K, L)`. For `k = 0` this is
/// the zero map to the zero group, or the augmentation when `augmented`.
fn relative_boundary(pair: &ComplexPair, k: usize, augmented: bool) -> IntMatrix {
    let (cols, _) = cell_index(pair, k);
    if k == 0 {
        let mut m = IntMatrix::zeros(usize::from(augmented), cols.len());
        if augmented {
            for j in 0..cols.len() {
                m[(0, j)] = BigInt::one();
            }
        }
        return m;
    }
    let (_, rows) = cell_index(pair, k - 1);
    let mut m = IntMatrix::zeros(rows.len(), cols.len());
    for (j, s) in cols.iter().enumerate() {
        for i in 0..s.len() {
            let mut f = s.clone();
            f.remove(i);
            if let Some(&r) = rows.get(&f) {
                m[(r, j)] = BigInt::from(if i % 2 == 0 { 1 } else { -1 });
            }
        }
    }
    m
}

/// Homology of a simplicial pair in one degree, with explicit generator cycles.
#[derive(Clone, Debug)]
pub struct Homology {
    pub k: usize,
    pub factors: InvariantFactors,
    pub generators: Vec<Chain>,
    cells: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    inner: CellHomology,
    pair: ComplexPair,
}

impl Homology {
    pub fn group(&self) -> FgAbelianGroup {
        self.inner.group()
    }

    pub fn orders(&self) -> &[BigInt] {
        &self.inner.orders
    }

    /// Coordinates of the class of a relative cycle. Symbols may be in any
    /// vertex order; terms inside the subcomplex are ignored.
    pub fn class_of(&self, c: &Chain) -> Result<Vec<BigInt>> {
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
        let mut v = vec![BigInt::zero(); self.cells.len()];
        for (s, g) in c.oriented().iter() {
            match self.index.get(s) {
                Some(&i) => v[i] += g,
                None => {
                    if !self.pair.in_sub(s) {
                        return Err(Error::NotSubcomplex(format!("{s:?}")));
                    }
                }
            }
        }
        self.inner.coordinates(&v)
    }
}

fn pair_homology(pair: &ComplexPair, k: usize, reduced: bool) -> Result<Homology> {
    let d_k = relative_boundary(pair, k, reduced);
    let d_k1 = relative_boundary(pair, k + 1, reduced);
    let inner = CellHomology::compute(&d_k, &d_k1)?;
    let (cells, index) = cell_index(pair, k);
    let generators = inner
        .generators
        .iter()
        .map(|g| Chain::from_terms(k, g.iter().zip(&cells).map(|(c, s)| (c.clone(), s.clone()))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Homology {
        k,
        factors: inner.factors.clone(),
        generators,
        cells,
        index,
        inner,
        pair: pair.clone(),
    })
}

/// `H_k(K, L; Z)` with generators as explicit relative cycles.
pub fn homology(pair: &ComplexPair, k: usize) -> Result<Homology> {
    pair_homology(pair, k, false)
}

/// Reduced homology of a complex, via the augmented chain complex.
pub fn reduced_homology(k: &SimplicialComplex, degree: usize) -> Result<Homology> {
    pair_homology(&ComplexPair::absolute(k.clone()), degree, true)
}

/// Invariant factors of `H_k` for every `k` up to the dimension of `K`.
pub fn homology_table(pair: &ComplexPair) -> Result<Vec<InvariantFactors>> {
    let top = pair.complex().dim().unwrap_or(0);
    (0..=top)
        .map(|k| homology(pair, k).map(|h| h.factors))
        .collect()
}

/// A vertex map between complexes, by labels.
pub type VertexMap = HashMap<String, String>;

/// Resolves a label map to indices and checks that it is simplicial and
/// sends the source subcomplex into the target subcomplex.
pub fn resolve_vertex_map(
    f: &VertexMap,
    src: &ComplexPair,
    tgt: &ComplexPair,
) -> Result<Vec<usize>> {
    let k = src.complex();
    let images = k
        .labels()
        .iter()
        .map(|l| {
            let image = f
                .get(l)
                .ok_or_else(|| Error::UnknownLabel(format!("no image for vertex `{l}`")))?;
            tgt.complex().vertex(image)
        })
        .collect::<Result<Vec<usize>>>()?;
    for s in k.all_simplices() {
        let mut img: Vec<usize> = s.iter().map(|&v| images[v]).collect();
        img.sort_unstable();
        img.dedup();
        if !tgt.complex().contains(&img) {
            return Err(Error::NotSimplicial(k.show(s)));
        }
        if src.in_sub(s) && !tgt.in_sub(&img) {
            return Err(Error::NotSimplicial(format!(
                "{} lies in the source subcomplex but its image does not",
                k.show(s)
            )));
        }
    }
    Ok(images)
}

/// Chain image of a chain under a vertex map (degenerate images vanish).
pub fn push_chain(c: &Chain, images: &[usize]) -> Chain {
    c.map_symbols(c.dim(), |s| {
        Some((1, s.iter().map(|&v| images[v]).collect()))
    })
    .expect("same dimension")
}

/// Morphism `H_k(src) -> H_k(tgt)` induced by a simplicial vertex map, on the
/// generator coordinates of both sides.
pub fn induced_homology_map(
    f: &VertexMap,
    src: &ComplexPair,
    tgt: &ComplexPair,
    k: usize,
) -> Result<GroupMorphism> {
    let images = resolve_vertex_map(f, src, tgt)?;
    let hs = homology(src, k)?;
    let ht = homology(tgt, k)?;
    induced_on(&images, &hs, &ht)
}

/// The induced map between already computed homology groups.
pub fn induced_on(images: &[usize], hs: &Homology, ht: &Homology) -> Result<GroupMorphism> {
    let columns = hs
        .generators
        .iter()
        .map(|g| {
            let pushed = push_chain(g, images).oriented();
            ht.class_of(&pushed)
        })
        .collect::<Result<Vec<_>>>()?;
    GroupMorphism::new(
        hs.group(),
        ht.group(),
        IntMatrix::from_columns(ht.orders().len(), &columns),
    )
}
