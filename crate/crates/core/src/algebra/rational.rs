//! Small dense linear algebra over the rationals.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"`, `"p"` or a decimal such as `"0.25"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        return (!q.is_zero()).then(|| Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = int.starts_with('-');
        let whole: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().ok()?
        };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let f: BigInt = frac.parse().ok()?;
        let num = whole.abs() * &scale + f;
        let num = if negative { -num } else { num };
        return Some(Rational::new(num, scale));
    }
    s.parse::<BigInt>().ok().map(Rational::from_integer)
}

/// Row-reduces `[a | b]` in place, returning the pivot columns of `a`.
fn eliminate(m: &mut [Vec<Rational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][c].recip();
        for x in m[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m.len() {
            if r != row && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// The unique solution of `a·x = b`, or `None` if the system is inconsistent
/// or its solution is not unique.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, y)| row.iter().cloned().chain([y.clone()]).collect())
        .collect();
    let pivots = eliminate(&mut m, cols);
    if pivots.len() != cols {
        return None;
    }
    if m[cols..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    Some((0..cols).map(|i| m[i][cols].clone()).collect())
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    let cols = a.first().map_or(0, Vec::len);
    let mut m = a.to_vec();
    eliminate(&mut m, cols).len()
}

/// Determinant of a square matrix.
pub fn determinant(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut m = a.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= &m[c][c];
        for r in c + 1..n {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &m[c][c];
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}

/// Weights `t_j >= 0` with `Σ t_j = 1` and `Σ t_j·v_j = 0`, if any exist.
///
/// Decided exactly by enumerating basic solutions: if the feasible set is
/// nonempty it has a vertex, which is the unique solution of the equality
/// system restricted to some column subset.
pub fn convex_zero_combination(vectors: &[Vec<Rational>]) -> Option<Vec<Rational>> {
    let n = vectors.len();
    let dim = vectors.first().map_or(0, Vec::len);
    if let Some(j) = vectors.iter().position(|v| v.iter().all(Zero::is_zero)) {
        let mut t = vec![Rational::zero(); n];
        t[j] = Rational::one();
        return Some(t);
    }
    let max_support = (dim + 1).min(n);
    for size in 2..=max_support {
        for subset in (0..n).combinations(size) {
            // rows: each coordinate, then the weight sum
            let mut a: Vec<Vec<Rational>> = (0..dim)
                .map(|i| subset.iter().map(|&j| vectors[j][i].clone()).collect())
                .collect();
            a.push(vec![Rational::one(); size]);
            let mut b = vec![Rational::zero(); dim];
            b.push(Rational::one());
            if let Some(x) = solve_unique(&a, &b) {
                if x.iter().all(|w| !w.is_negative()) {
                    let mut t = vec![Rational::zero(); n];
                    for (&j, w) in subset.iter().zip(x) {
                        t[j] = w;
                    }
                    return Some(t);
                }
            }
        }
    }
    None
}
