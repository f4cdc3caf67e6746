//! Smith normal form with unimodular transforms, column Hermite normal form,
//! and an integer linear-system solver built on top of them.
//!
//! The elimination runs on machine integers with overflow checks first and
//! restarts on arbitrary-precision integers as soon as any intermediate
//! value leaves `i64`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;

/// Which transforms to accumulate during elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SnfFlags {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl SnfFlags {
    pub const ALL: SnfFlags = SnfFlags {
        u: true,
        u_inv: true,
        v: true,
        v_inv: true,
    };
    pub const NONE: SnfFlags = SnfFlags {
        u: false,
        u_inv: false,
        v: false,
        v_inv: false,
    };
}

/// `u · m · v = d` with `d` diagonal, `d[i] | d[i+1]`, nonnegative diagonal,
/// and `u`, `v` unimodular. Transforms not requested in the flags are `None`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rows: usize,
    pub cols: usize,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

impl SmithForm {
    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal.iter().take_while(|d| !d.is_zero()).count()
    }

    pub fn d(&self) -> IntMatrix {
        IntMatrix::diagonal(self.rows, self.cols, &self.diagonal)
    }

    /// Nonzero diagonal entries.
    pub fn factors(&self) -> &[BigInt] {
        &self.diagonal[..self.rank()]
    }
}

/// Full Smith normal form `(U, D, V)` with `U·M·V = D`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith_with(
        m,
        SnfFlags {
            u: true,
            u_inv: false,
            v: true,
            v_inv: false,
        },
    );
    let d = s.d();
    (s.u.unwrap(), d, s.v.unwrap())
}

pub fn smith_with(m: &IntMatrix, flags: SnfFlags) -> SmithForm {
    if let Some(small) = Engine::<i64>::load(m, flags) {
        if let Some(done) = small.run() {
            return done.finish();
        }
    }
    let big = Engine::<BigInt>::load(m, flags).expect("bigint load never fails");
    big.run()
        .expect("bigint elimination never overflows")
        .finish()
}

trait Scalar: Clone + std::fmt::Debug {
    fn nil() -> Self;
    fn unit() -> Self;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_nil(&self) -> bool;
    fn is_neg(&self) -> bool;
    fn is_unit(&self) -> bool;
    /// `|self| < |other|`
    fn abs_lt(&self, other: &Self) -> bool;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Option<Self>;
    fn divides(&self, x: &Self) -> bool;
    /// `self - q·x`
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    fn negated(&self) -> Option<Self>;
}

impl Scalar for i64 {
    fn nil() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i64()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_neg(&self) -> bool {
        *self < 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn divides(&self, x: &Self) -> bool {
        *self != 0 && x.checked_rem(*self).is_none_or(|r| r == 0)
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        q.checked_mul(*x).and_then(|p| self.checked_sub(p))
    }
    fn negated(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl Scalar for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn unit() -> Self {
        One::one()
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_neg(&self) -> bool {
        Signed::is_negative(self)
    }
    fn is_unit(&self) -> bool {
        self.magnitude().is_one()
    }
    fn abs_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn quot(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn divides(&self, x: &Self) -> bool {
        !Zero::is_zero(self) && Zero::is_zero(&(x % self))
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn negated(&self) -> Option<Self> {
        Some(-self)
    }
}

/// Square transform matrix stored densely.
#[derive(Clone, Debug)]
struct Square<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> Square<T> {
    fn identity(n: usize) -> Self {
        let mut data = vec![T::nil(); n * n];
        for i in 0..n {
            data[i * n + i] = T::unit();
        }
        Square { n, data }
    }

    /// row_i -= q·row_t
    fn row_sub(&mut self, i: usize, t: usize, q: &T) -> Option<()> {
        let n = self.n;
        for c in 0..n {
            let x = &self.data[t * n + c];
            if x.is_nil() {
                continue;
            }
            let v = self.data[i * n + c].sub_mul(q, x)?;
            self.data[i * n + c] = v;
        }
        Some(())
    }

    /// col_j -= q·col_t
    fn col_sub(&mut self, j: usize, t: usize, q: &T) -> Option<()> {
        let n = self.n;
        for r in 0..n {
            let x = &self.data[r * n + t];
            if x.is_nil() {
                continue;
            }
            let v = self.data[r * n + j].sub_mul(q, x)?;
            self.data[r * n + j] = v;
        }
        Some(())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.n {
                self.data.swap(a * self.n + c, b * self.n + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.n {
                self.data.swap(r * self.n + a, r * self.n + b);
            }
        }
    }

    fn neg_row(&mut self, i: usize) -> Option<()> {
        for c in 0..self.n {
            let v = self.data[i * self.n + c].negated()?;
            self.data[i * self.n + c] = v;
        }
        Some(())
    }

    fn neg_col(&mut self, j: usize) -> Option<()> {
        for r in 0..self.n {
            let v = self.data[r * self.n + j].negated()?;
            self.data[r * self.n + j] = v;
        }
        Some(())
    }

    fn to_matrix(&self) -> IntMatrix {
        IntMatrix::new(self.n, self.n, self.data.iter().map(T::to_big).collect()).unwrap()
    }
}

struct Engine<T> {
    m: usize,
    n: usize,
    a: Vec<T>,
    u: Option<Square<T>>,
    u_inv: Option<Square<T>>,
    v: Option<Square<T>>,
    v_inv: Option<Square<T>>,
}

impl<T: Scalar> Engine<T> {
    fn load(mat: &IntMatrix, flags: SnfFlags) -> Option<Self> {
        let (m, n) = mat.shape();
        let a = mat
            .entries()
            .iter()
            .map(T::from_big)
            .collect::<Option<Vec<T>>>()?;
        let sq = |on: bool, k: usize| on.then(|| Square::identity(k));
        Some(Engine {
            m,
            n,
            a,
            u: sq(flags.u, m),
            u_inv: sq(flags.u_inv, m),
            v: sq(flags.v, n),
            v_inv: sq(flags.v_inv, n),
        })
    }

    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.n + j]
    }

    /// row_i -= q·row_t, from column `from` on (earlier columns are zero in row t).
    fn row_sub(&mut self, i: usize, t: usize, q: &T, from: usize) -> Option<()> {
        let n = self.n;
        for c in from..n {
            let x = &self.a[t * n + c];
            if x.is_nil() {
                continue;
            }
            let v = self.a[i * n + c].sub_mul(q, x)?;
            self.a[i * n + c] = v;
        }
        if let Some(u) = self.u.as_mut() {
            u.row_sub(i, t, q)?;
        }
        if let Some(ui) = self.u_inv.as_mut() {
            // inverse of (row_i -= q row_t) applied on the right: col_t += q col_i
            let neg = q.negated()?;
            ui.col_sub(t, i, &neg)?;
        }
        Some(())
    }

    /// col_j -= q·col_t, from row `from` on.
    fn col_sub(&mut self, j: usize, t: usize, q: &T, from: usize) -> Option<()> {
        let n = self.n;
        for r in from..self.m {
            let x = &self.a[r * n + t];
            if x.is_nil() {
                continue;
            }
            let v = self.a[r * n + j].sub_mul(q, x)?;
            self.a[r * n + j] = v;
        }
        if let Some(v) = self.v.as_mut() {
            v.col_sub(j, t, q)?;
        }
        if let Some(vi) = self.v_inv.as_mut() {
            // row_t += q row_j
            let neg = q.negated()?;
            vi.row_sub(t, j, &neg)?;
        }
        Some(())
    }

    fn swap_rows(&mut self, i: usize, t: usize) {
        if i == t {
            return;
        }
        for c in 0..self.n {
            self.a.swap(i * self.n + c, t * self.n + c);
        }
        if let Some(u) = self.u.as_mut() {
            u.swap_rows(i, t);
        }
        if let Some(ui) = self.u_inv.as_mut() {
            ui.swap_cols(i, t);
        }
    }

    fn swap_cols(&mut self, j: usize, t: usize) {
        if j == t {
            return;
        }
        for r in 0..self.m {
            self.a.swap(r * self.n + j, r * self.n + t);
        }
        if let Some(v) = self.v.as_mut() {
            v.swap_cols(j, t);
        }
        if let Some(vi) = self.v_inv.as_mut() {
            vi.swap_rows(j, t);
        }
    }

    fn neg_row(&mut self, t: usize) -> Option<()> {
        for c in 0..self.n {
            let v = self.a[t * self.n + c].negated()?;
            self.a[t * self.n + c] = v;
        }
        if let Some(u) = self.u.as_mut() {
            u.neg_row(t)?;
        }
        if let Some(ui) = self.u_inv.as_mut() {
            ui.neg_col(t)?;
        }
        Some(())
    }

    /// Smallest nonzero entry (by absolute value) in the trailing block.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let x = self.at(i, j);
                if x.is_nil() {
                    continue;
                }
                if x.is_unit() {
                    return Some((i, j));
                }
                match best {
                    Some((bi, bj)) if !x.abs_lt(self.at(bi, bj)) => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(mut self) -> Option<Self> {
        let steps = self.m.min(self.n);
        for t in 0..steps {
            let Some((pi, pj)) = self.find_pivot(t) else {
                break;
            };
            self.swap_rows(pi, t);
            self.swap_cols(pj, t);
            loop {
                // clear column t below the pivot
                let mut smallest: Option<usize> = None;
                for i in (t + 1)..self.m {
                    if self.at(i, t).is_nil() {
                        continue;
                    }
                    let q = self.at(i, t).quot(self.at(t, t))?;
                    self.row_sub(i, t, &q, t)?;
                    if !self.at(i, t).is_nil() {
                        match smallest {
                            Some(s) if !self.at(i, t).abs_lt(self.at(s, t)) => {}
                            _ => smallest = Some(i),
                        }
                    }
                }
                if let Some(s) = smallest {
                    self.swap_rows(s, t);
                    continue;
                }
                // clear row t right of the pivot
                let mut smallest: Option<usize> = None;
                for j in (t + 1)..self.n {
                    if self.at(t, j).is_nil() {
                        continue;
                    }
                    let q = self.at(t, j).quot(self.at(t, t))?;
                    self.col_sub(j, t, &q, t)?;
                    if !self.at(t, j).is_nil() {
                        match smallest {
                            Some(s) if !self.at(t, j).abs_lt(self.at(t, s)) => {}
                            _ => smallest = Some(j),
                        }
                    }
                }
                if let Some(s) = smallest {
                    self.swap_cols(s, t);
                    continue;
                }
                // divisibility of the trailing block by the pivot
                if !self.at(t, t).is_unit() {
                    let p = self.at(t, t).clone();
                    let bad = ((t + 1)..self.m)
                        .find(|&i| ((t + 1)..self.n).any(|j| !p.divides(self.at(i, j))));
                    if let Some(i) = bad {
                        let minus_one = T::unit().negated()?;
                        self.row_sub(t, i, &minus_one, t)?;
                        continue;
                    }
                }
                break;
            }
            if self.at(t, t).is_neg() {
                self.neg_row(t)?;
            }
        }
        Some(self)
    }

    fn finish(self) -> SmithForm {
        let k = self.m.min(self.n);
        let diagonal = (0..k).map(|i| self.at(i, i).to_big()).collect();
        SmithForm {
            diagonal,
            rows: self.m,
            cols: self.n,
            u: self.u.map(|s| s.to_matrix()),
            u_inv: self.u_inv.map(|s| s.to_matrix()),
            v: self.v.map(|s| s.to_matrix()),
            v_inv: self.v_inv.map(|s| s.to_matrix()),
        }
    }
}

/// Canonical basis of the lattice spanned by the columns of `m`, in column
/// Hermite normal form: pivot rows strictly increase from column to column,
/// pivots are positive, and entries of earlier columns in a pivot row lie in
/// `[0, pivot)`.
pub fn column_hermite_basis(m: &IntMatrix) -> IntMatrix {
    let (rows, cols) = m.shape();
    let mut w: Vec<Vec<BigInt>> = m.columns();
    let mut k = 0usize;
    for i in 0..rows {
        if k == cols {
            break;
        }
        // gcd-eliminate row i across columns k..
        loop {
            let mut best: Option<usize> = None;
            for (j, col) in w.iter().enumerate().skip(k) {
                if col[i].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if col[i].magnitude() >= w[b][i].magnitude() => {}
                    _ => best = Some(j),
                }
            }
            let Some(b) = best else { break };
            w.swap(k, b);
            let mut clean = true;
            for j in (k + 1)..cols {
                if w[j][i].is_zero() {
                    continue;
                }
                let q = &w[j][i] / &w[k][i];
                let pivot_col = w[k].clone();
                for (x, p) in w[j].iter_mut().zip(&pivot_col) {
                    *x -= &q * p;
                }
                if !w[j][i].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if k < cols && !w[k][i].is_zero() {
            if w[k][i].is_negative() {
                for x in w[k].iter_mut() {
                    *x = -&*x;
                }
            }
            let pivot_col = w[k].clone();
            for col in w.iter_mut().take(k) {
                let q = col[i].div_floor(&pivot_col[i]);
                if !q.is_zero() {
                    for (x, p) in col.iter_mut().zip(&pivot_col) {
                        *x -= &q * p;
                    }
                }
            }
            k += 1;
        }
    }
    w.truncate(k);
    IntMatrix::from_columns(rows, &w)
}

/// Integer kernel basis of `m` (columns), as a `cols × nullity` matrix.
pub fn integer_kernel(m: &IntMatrix) -> IntMatrix {
    let s = smith_with(
        m,
        SnfFlags {
            u: false,
            u_inv: false,
            v: true,
            v_inv: false,
        },
    );
    let r = s.rank();
    let v = s.v.unwrap();
    let idx: Vec<usize> = (r..m.cols()).collect();
    v.select_cols(&idx)
}

/// Solves `M·x = b` over the integers, reusing one factorization of `M`.
#[derive(Clone, Debug)]
pub struct IntegerSolver {
    smith: SmithForm,
}

impl IntegerSolver {
    pub fn new(m: &IntMatrix) -> Self {
        IntegerSolver {
            smith: smith_with(
                m,
                SnfFlags {
                    u: true,
                    u_inv: false,
                    v: true,
                    v_inv: false,
                },
            ),
        }
    }

    pub fn rows(&self) -> usize {
        self.smith.rows
    }

    /// Some integer solution, or `None` when `b` is not in the integer column span.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.smith.rows, "right-hand side length");
        let u = self.smith.u.as_ref().unwrap();
        let v = self.smith.v.as_ref().unwrap();
        let ub = u.mul_vec(b).unwrap();
        let r = self.smith.rank();
        if ub[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![BigInt::zero(); self.smith.cols];
        for i in 0..r {
            let (q, rem) = ub[i].div_rem(&self.smith.diagonal[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
        Some(v.mul_vec(&y).unwrap())
    }

    pub fn contains(&self, b: &[BigInt]) -> bool {
        self.solve(b).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) {
        let s = smith_with(m, SnfFlags::ALL);
        let (u, v) = (s.u.clone().unwrap(), s.v.clone().unwrap());
        let d = s.d();
        assert_eq!(u.mul(m).unwrap().mul(&v).unwrap(), d);
        assert_eq!(
            u.mul(s.u_inv.as_ref().unwrap()).unwrap(),
            IntMatrix::identity(m.rows())
        );
        assert_eq!(
            v.mul(s.v_inv.as_ref().unwrap()).unwrap(),
            IntMatrix::identity(m.cols())
        );
        let f = s.factors();
        for w in f.windows(2) {
            assert!((&w[1] % &w[0]).is_zero());
        }
        assert!(f.iter().all(|x| x.is_positive()));
    }

    #[test]
    fn identity_is_fixed() {
        let (u, d, v) = smith_normal_form(&IntMatrix::identity(2));
        assert_eq!(u, IntMatrix::identity(2));
        assert_eq!(d, IntMatrix::identity(2));
        assert_eq!(v, IntMatrix::identity(2));
    }

    #[test]
    fn zero_matrix() {
        let z = IntMatrix::zeros(3, 2);
        let (_, d, _) = smith_normal_form(&z);
        assert!(d.is_zero());
        check(&z);
    }

    #[test]
    fn two_by_two() {
        // gcd of entries is 2 and |det| = 8, so diag(2, 4)
        let m = IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]]);
        let (_, d, _) = smith_normal_form(&m);
        assert_eq!(d, IntMatrix::from_rows(&[vec![2, 0], vec![0, 4]]));
        check(&m);
    }

    #[test]
    fn divisibility_is_enforced() {
        // diag(2,3) must become diag(1,6)
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = smith_with(&m, SnfFlags::ALL);
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
        check(&m);
    }

    #[test]
    fn falls_back_to_bigints() {
        let big = i64::MAX / 2;
        let m = IntMatrix::from_rows(&[vec![big, big - 1], vec![big - 3, big - 7]]);
        check(&m);
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let m = IntMatrix::from_rows(&[vec![-6, 12], vec![-3, 6], vec![-2, 4]]);
        let h = column_hermite_basis(&m);
        assert_eq!(h, IntMatrix::from_rows(&[vec![6], vec![3], vec![2]]));
    }

    #[test]
    fn solver_respects_integrality() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = IntegerSolver::new(&m);
        assert!(s.solve(&[BigInt::from(4), BigInt::from(9)]).is_some());
        assert!(s.solve(&[BigInt::from(1), BigInt::from(0)]).is_none());
    }

    #[test]
    fn kernel_spans_nullspace() {
        let m = IntMatrix::from_rows(&[vec![1, -2, 0], vec![0, 1, -3]]);
        let k = integer_kernel(&m);
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).unwrap().is_zero());
        let h = column_hermite_basis(&k);
        assert_eq!(h, IntMatrix::from_rows(&[vec![6], vec![3], vec![1]]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_matrix() -> impl Strategy<Value = IntMatrix> {
            (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| {
                proptest::collection::vec(-9i64..=9, r * c).prop_map(move |e| {
                    IntMatrix::new(r, c, e.into_iter().map(BigInt::from).collect()).unwrap()
                })
            })
        }

        proptest! {
            #[test]
            fn reconstruction_and_unimodularity(m in small_matrix()) {
                check(&m);
            }

            #[test]
            fn hermite_basis_spans_same_lattice(m in small_matrix()) {
                let h = column_hermite_basis(&m);
                let s = IntegerSolver::new(&h);
                for col in m.columns() {
                    prop_assert!(s.contains(&col));
                }
                let back = IntegerSolver::new(&m);
                for col in h.columns() {
                    prop_assert!(back.contains(&col));
                }
            }
        }
    }
}
