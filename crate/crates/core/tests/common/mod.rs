//! Independent oracles for the integration tests. Nothing here calls the
//! library's linear algebra: matrices are plain `i128` arrays, invariant
//! factors come from a textbook elimination or from determinantal divisors.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use gable_core::algebra::{IntMatrix, InvariantFactors};
use gable_core::simplicial::SimplicialComplex;
use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Mat = Vec<Vec<i128>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn to_mat(m: &IntMatrix) -> Mat {
    (0..m.rows())
        .map(|i| {
            m.row(i)
                .iter()
                .map(|x| x.to_i128().expect("small entry"))
                .collect()
        })
        .collect()
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &Mat) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .filter(|&j| m[0][j] != 0)
        .map(|j| {
            let minor: Mat = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det(&minor)
        })
        .sum()
}

/// Diagonal of the Smith form from determinantal divisors:
/// `d_1 ⋯ d_k = gcd` of all `k × k` minors.
pub fn determinantal_factors(m: &Mat) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut previous = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Mat = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                    .collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            out.extend(std::iter::repeat_n(0, rows.min(cols) - k + 1));
            break;
        }
        out.push(g / previous);
        previous = g;
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut with_last: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    for s in &mut with_last {
        s.push(n - 1);
    }
    let mut all = subsets(n - 1, k);
    all.extend(with_last);
    all
}

/// Nonzero diagonal entries of a Smith form by plain pivoting elimination.
pub fn elimination_factors(mut a: Mat) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return diag;
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                for i in t..rows {
                    a[i][j] -= q * a[i][t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let stray = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match stray {
                Some(i) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => {
                    diag.push(p.abs());
                    break;
                }
            }
        }
    }
    diag
}

/// Relative boundary matrix `C_k(K, L) -> C_{k-1}(K, L)` on sorted simplices.
pub fn boundary_matrix(k: &SimplicialComplex, sub: &HashSet<Vec<String>>, dim: usize) -> Mat {
    let cells = |d: usize| -> Vec<Vec<String>> {
        k.simplices(d)
            .iter()
            .map(|s| k.simplex_labels(s))
            .filter(|s| !sub.contains(s))
            .collect()
    };
    let tops = cells(dim);
    if dim == 0 {
        return Vec::new();
    }
    let faces = cells(dim - 1);
    let index: BTreeMap<&Vec<String>, usize> =
        faces.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let mut m = vec![vec![0i128; tops.len()]; faces.len()];
    for (j, s) in tops.iter().enumerate() {
        for i in 0..s.len() {
            let mut f = s.clone();
            f.remove(i);
            if let Some(&r) = index.get(&f) {
                m[r][j] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    m
}

/// `H_dim(K, L)` from ranks and the Smith form of the relative boundaries.
pub fn relative_homology(
    k: &SimplicialComplex,
    sub: &HashSet<Vec<String>>,
    dim: usize,
) -> InvariantFactors {
    let cells = k
        .simplices(dim)
        .iter()
        .filter(|s| !sub.contains(&k.simplex_labels(s)))
        .count();
    let out_rank = if dim == 0 {
        0
    } else {
        elimination_factors(boundary_matrix(k, sub, dim)).len()
    };
    let incoming = elimination_factors(boundary_matrix(k, sub, dim + 1));
    let torsion: Vec<BigInt> = incoming
        .iter()
        .filter(|&&d| d > 1)
        .map(|&d| BigInt::from(d))
        .collect();
    InvariantFactors::new(cells - out_rank - incoming.len(), torsion)
        .expect("Smith diagonal divides")
}

pub fn sub_labels(sub: &SimplicialComplex) -> HashSet<Vec<String>> {
    sub.all_simplices().map(|s| sub.simplex_labels(s)).collect()
}

pub fn homology_table(k: &SimplicialComplex, sub: &SimplicialComplex) -> Vec<InvariantFactors> {
    let labels = sub_labels(sub);
    (0..=k.dim().unwrap_or(0))
        .map(|d| relative_homology(k, &labels, d))
        .collect()
}

/// Whether Σ tₚ (e_{aₚ} − e_{bₚ}) = 0 has a convex solution: exactly when the
/// directed graph with edges aₚ → bₚ has a cycle.
pub fn meets_diagonal(pairs: &[(usize, usize)]) -> bool {
    let edges: BTreeSet<(usize, usize)> = pairs.iter().copied().collect();
    let nodes: BTreeSet<usize> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let mut state: BTreeMap<usize, u8> = BTreeMap::new();
    fn visit(v: usize, edges: &BTreeSet<(usize, usize)>, state: &mut BTreeMap<usize, u8>) -> bool {
        state.insert(v, 1);
        for &(_, w) in edges.range((v, 0)..=(v, usize::MAX)) {
            match state.get(&w) {
                Some(1) => return true,
                Some(_) => {}
                None => {
                    if visit(w, edges, state) {
                        return true;
                    }
                }
            }
        }
        state.insert(v, 2);
        false
    }
    nodes
        .into_iter()
        .any(|v| !state.contains_key(&v) && visit(v, &edges, &mut state))
}

pub fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients of the Gaussian binomial `[m+n choose m]_q` by dynamic programming
/// over the grid: each cell counts paths by area so far.
pub fn gaussian_binomial(m: usize, n: usize) -> Vec<u64> {
    let mut table = vec![vec![vec![0u64; m * n + 1]; n + 1]; m + 1];
    table[0][0][0] = 1;
    for i in 0..=m {
        for j in 0..=n {
            for a in 0..=m * n {
                let here = table[i][j][a];
                if here == 0 {
                    continue;
                }
                if i < m {
                    table[i + 1][j][a] += here;
                }
                if j < n {
                    table[i][j + 1][a + i] += here;
                }
            }
        }
    }
    table[m][n].clone()
}

pub fn rational_det(m: &[Vec<Ratio<i128>>]) -> Ratio<i128> {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Ratio::from_integer(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Ratio::from_integer(0);
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            for k in c..n {
                let v = a[c][k];
                a[r][k] -= f * v;
            }
        }
    }
    d
}

/// A random complex on `n` labelled vertices generated by `generators`
/// random simplices of dimension at most `max_dim`.
pub fn random_complex(
    rng: &mut ChaCha8Rng,
    n: usize,
    max_dim: usize,
    generators: usize,
) -> SimplicialComplex {
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let simplices: Vec<Vec<String>> = (0..generators)
        .map(|_| {
            let size = rng.gen_range(1..=(max_dim + 1).min(n));
            let mut vs = labels.clone();
            vs.shuffle(rng);
            vs.truncate(size);
            vs
        })
        .collect();
    SimplicialComplex::new(labels, &simplices).expect("valid generators")
}

/// A random subcomplex: the face closure of a random selection of simplices.
pub fn random_sub(rng: &mut ChaCha8Rng, k: &SimplicialComplex) -> SimplicialComplex {
    let chosen: Vec<Vec<usize>> = k
        .all_simplices()
        .filter(|_| rng.gen_bool(0.25))
        .cloned()
        .collect();
    k.subcomplex(chosen).expect("simplices of k")
}
