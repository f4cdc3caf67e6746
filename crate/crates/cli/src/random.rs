//! Seeded generators for the randomized suites. Case `i` of a suite draws
//! from its own stream, so results do not depend on scheduling.

use std::collections::{BTreeSet, HashMap};

use gable_core::algebra::{FgAbelianGroup, FinitePoset, GroupMorphism, IntMatrix, InverseSystem};
use gable_core::simplicial::{Chain, ComplexPair, Simplex, SimplicialComplex};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn case_rng(seed: u64, suite: &str, case: usize) -> ChaCha8Rng {
    let tag = suite.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3)
    });
    ChaCha8Rng::seed_from_u64(seed ^ tag ^ (case as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn matrix(rng: &mut impl Rng, max_rows: usize, max_cols: usize, bound: i64) -> IntMatrix {
    let rows = rng.gen_range(1..=max_rows);
    let cols = rng.gen_range(1..=max_cols);
    let entries = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::new(rows, cols, entries).expect("shape matches")
}

/// A complex on `n` vertices generated by random simplices of dimension at most `max_dim`.
pub fn complex(
    rng: &mut impl Rng,
    n: usize,
    max_dim: usize,
    generators: usize,
) -> SimplicialComplex {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut simplices: Vec<Vec<String>> = Vec::new();
    for _ in 0..generators {
        let size = rng.gen_range(1..=(max_dim + 1).min(n));
        let mut vs: Vec<usize> = (0..n).collect();
        vs.shuffle(rng);
        simplices.push(vs[..size].iter().map(|&v| labels[v].clone()).collect());
    }
    SimplicialComplex::new(labels, &simplices).expect("generated simplices are valid")
}

/// A pair `(K, L)` with `L` generated by a random selection of simplices of `K`.
pub fn pair(rng: &mut impl Rng, n: usize, max_dim: usize) -> ComplexPair {
    let size = rng.gen_range(2..=6);

    let k = complex(rng, n, max_dim, size);
    let chosen: Vec<Simplex> = k
        .all_simplices()
        .filter(|_| rng.gen_bool(0.25))
        .cloned()
        .collect();
    let sub = k.subcomplex(chosen).expect("simplices of K");
    ComplexPair::new(k, sub).expect("closure lies in K")
}

pub fn chain(
    rng: &mut impl Rng,
    k: &SimplicialComplex,
    dim: usize,
    max_terms: usize,
    bound: i64,
) -> Chain {
    let cells = k.simplices(dim);
    let mut c = Chain::zero(dim);
    if cells.is_empty() {
        return c;
    }
    for _ in 0..rng.gen_range(1..=max_terms) {
        let s = cells[rng.gen_range(0..cells.len())].clone();
        c.add_term(BigInt::from(rng.gen_range(-bound..=bound)), s)
            .expect("right dimension");
    }
    c
}

/// A random directed quasi-order on `n` elements with a top element, the
/// groups `Z ⊕ Z/t` everywhere, and maps multiplying by `w(b)/w(a)` where
/// `w(x)` is the product of weights over the elements below `x`.
pub fn directed_system(rng: &mut impl Rng, n: usize) -> InverseSystem {
    let labels: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut rel = Vec::new();
    for b in 1..n {
        for a in 0..b {
            if b == n - 1 || rng.gen_bool(0.3) {
                rel.push((labels[a].clone(), labels[b].clone()));
            }
        }
    }
    let poset = FinitePoset::new(labels, &rel).expect("relations among known labels");
    let t = rng.gen_range(2..=6);
    let group = FgAbelianGroup::from_orders(&[BigInt::from(0), BigInt::from(t)]);
    let weights: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=3)).collect();
    let w: Vec<i64> = (0..n)
        .map(|x| {
            (0..n)
                .filter(|&y| poset.leq(y, x))
                .map(|y| weights[y])
                .product()
        })
        .collect();
    let mut maps = HashMap::new();
    for (a, b) in poset.strict_pairs() {
        let f = BigInt::from(w[b] / w[a]);
        let m = IntMatrix::diagonal(2, 2, &[f.clone(), f]);
        maps.insert(
            (a, b),
            GroupMorphism::new(group.clone(), group.clone(), m).expect("square map"),
        );
    }
    InverseSystem::new(poset, vec![group; n], maps).expect("weights compose")
}

/// A subset containing the top element, hence strongly cofinal.
pub fn cofinal_subset(rng: &mut impl Rng, sys: &InverseSystem) -> Vec<String> {
    let p = sys.poset();
    let n = p.len();
    let mut chosen: BTreeSet<usize> = (0..n - 1).filter(|_| rng.gen_bool(0.4)).collect();
    chosen.insert(n - 1);
    chosen.into_iter().map(|i| p.label(i).to_string()).collect()
}
