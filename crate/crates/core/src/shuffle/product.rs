use num_bigint::BigInt;

use super::paths::enumerate_paths;
use crate::simplicial::{Chain, FormalSum, Simplex, SimplicialComplex};

/// An ordered list of vertex pairs `(a, b)`, `a` from the left factor and `b`
/// from the right one.
pub type ProductSimplex = Vec<(usize, usize)>;

pub type ProductChain = FormalSum<ProductSimplex>;

/// `(σ, μ) ∘ l_f` for every shuffle `f`, with the sign `(-1)^{|f|}`.
pub fn cross_symbols(sigma: &[usize], mu: &[usize]) -> Vec<(i32, ProductSimplex)> {
    let (m, n) = (sigma.len() - 1, mu.len() - 1);
    enumerate_paths(m, n)
        .into_iter()
        .map(|f| {
            (
                f.sign(),
                f.points()
                    .into_iter()
                    .map(|(i, j)| (sigma[i], mu[j]))
                    .collect(),
            )
        })
        .collect()
}

/// The simplicial cross product, extended bilinearly.
pub fn cross(c1: &Chain, c2: &Chain) -> ProductChain {
    let mut out = ProductChain::zero(c1.dim() + c2.dim());
    for (s, g) in c1.iter() {
        for (t, h) in c2.iter() {
            let gh = g * h;
            for (sign, p) in cross_symbols(s, t) {
                out.add_term(&gh * sign, p).expect("dimensions add");
            }
        }
    }
    out
}

/// Alternating deletion of positions, with degenerate terms dropped.
pub fn product_boundary(c: &ProductChain) -> ProductChain {
    c.boundary()
}

/// `∂(c₁×c₂) − ∂c₁×c₂ − (−1)^m·c₁×∂c₂` for an `m`-chain `c₁`. It vanishes
/// identically; a nonzero value is a counterexample.
pub fn boundary_formula_defect(c1: &Chain, c2: &Chain) -> ProductChain {
    let (m, n) = (c1.dim(), c2.dim());
    let mut defect = product_boundary(&cross(c1, c2));
    if m > 0 {
        defect = defect
            .sub(&cross(&c1.boundary(), c2))
            .expect("dimensions agree");
    }
    if n > 0 {
        let sign = BigInt::from(if m % 2 == 0 { 1 } else { -1 });
        defect = defect
            .sub(&cross(c1, &c2.boundary()).scale(&sign))
            .expect("dimensions agree");
    }
    defect
}

/// The pair list with both components exchanged.
pub fn swap(s: &[(usize, usize)]) -> ProductSimplex {
    s.iter().map(|&(a, b)| (b, a)).collect()
}

/// Index of the pair vertex `(a, b)` in a product of complexes, `a`-major.
pub fn pair_index(a: usize, b: usize, right_vertices: usize) -> usize {
    a * right_vertices + b
}

/// Label of a pair vertex.
pub fn pair_label(y: &SimplicialComplex, z: &SimplicialComplex, a: usize, b: usize) -> String {
    format!("({},{})", y.label(a), z.label(b))
}

/// The staircase triangulation of `|Y| × |Z|`: for every pair of simplices,
/// the chains of vertex pairs traced by the shuffles, closed under faces.
/// Vertex `(a, b)` has index `a·|Z| + b`.
pub fn staircase_product(y: &SimplicialComplex, z: &SimplicialComplex) -> SimplicialComplex {
    let nz = z.vertex_count();
    let mut tops = Vec::new();
    for s in y.maximal_simplices() {
        for t in z.maximal_simplices() {
            for (_, p) in cross_symbols(&s, &t) {
                tops.push(
                    p.iter()
                        .map(|&(a, b)| pair_index(a, b, nz))
                        .collect::<Simplex>(),
                );
            }
        }
    }
    // every pair lies on some shuffle path, so all |Y|·|Z| pair vertices occur
    let labels: Vec<String> = (0..y.vertex_count())
        .flat_map(|a| (0..nz).map(move |b| (a, b)))
        .map(|(a, b)| pair_label(y, z, a, b))
        .collect();
    SimplicialComplex::from_indexed(labels, tops)
}

/// Decodes a simplex of `staircase_product(y, z)` back into vertex pairs.
pub fn decode_product_simplex(s: &[usize], right_vertices: usize) -> ProductSimplex {
    s.iter()
        .map(|&v| (v / right_vertices, v % right_vertices))
        .collect()
}

/// Coefficient bookkeeping helper: the chain `Σ g·s` as a vector of terms.
pub fn terms(c: &ProductChain) -> Vec<(BigInt, ProductSimplex)> {
    c.iter().map(|(s, g)| (g.clone(), s.clone())).collect()
}
