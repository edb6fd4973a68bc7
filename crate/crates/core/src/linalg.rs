//! Dense linear algebra generic over the scalar type.
//!
//! Anything implementing [`Ring`] (integers, rationals, floats, residues mod a
//! prime) gets matrix products and the division-free characteristic polynomial;
//! [`Field`] scalars additionally get row reduction, rank and null spaces.
//! Exact paths instantiate these with [`BigRational`](num_rational::BigRational),
//! [`BigInt`](num_bigint::BigInt) or [`ModP`].

use std::fmt;
use std::ops::{Add, Div, Index, IndexMut, Mul, Neg, Rem, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Num, One, Zero};

pub trait Ring: Num + Clone + Neg<Output = Self> + fmt::Debug {}
impl<T> Ring for T where T: Num + Clone + Neg<Output = Self> + fmt::Debug {}

/// Marker for rings whose `Div` is exact field division.
pub trait Field: Ring {}

impl<T: Clone + Integer + Neg<Output = T> + fmt::Debug> Field for Ratio<T> {}
impl Field for f32 {}
impl Field for f64 {}
impl<const P: u64> Field for ModP<P> {}

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.data.chunks(self.cols.max(1))).finish()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &T {
        &self.data[r * self.cols + c]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut T {
        &mut self.data[r * self.cols + c]
    }
}

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// `self - lambda * I`.
    pub fn shifted(&self, lambda: &T) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = m[(i, i)].clone() - lambda.clone();
        }
        m
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = out[(i, j)].clone() + a.clone() * other[(k, j)].clone();
                }
            }
        }
        out
    }

    /// Characteristic polynomial `det(tI - A)` by Berkowitz's division-free
    /// algorithm. Coefficients are returned constant term first; the leading
    /// coefficient is 1.
    pub fn charpoly(&self) -> Vec<T> {
        assert_eq!(self.rows, self.cols, "charpoly of a non-square matrix");
        let n = self.rows;
        // `v` holds the coefficients of the char poly of the leading r x r
        // block, highest degree first.
        let mut v: Vec<T> = vec![T::one()];
        for r in 0..n {
            // A_r = leading r x r block, R = row r cols 0..r, C = col r rows 0..r,
            // a = A[r][r]. Toeplitz column: 1, -a, -R C, -R A_r C, ...
            let mut col = Vec::with_capacity(r + 2);
            col.push(T::one());
            col.push(-self[(r, r)].clone());
            let mut x: Vec<T> = (0..r).map(|i| self[(i, r)].clone()).collect();
            for _ in 0..r {
                let rc = (0..r).fold(T::zero(), |acc, i| {
                    acc + self[(r, i)].clone() * x[i].clone()
                });
                col.push(-rc);
                x = (0..r)
                    .map(|i| {
                        (0..r).fold(T::zero(), |acc, k| {
                            acc + self[(i, k)].clone() * x[k].clone()
                        })
                    })
                    .collect();
            }
            // new = Toeplitz(col) (r+2 x r+1) * v
            let mut next = vec![T::zero(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    if i >= j {
                        *slot = slot.clone() + col[i - j].clone() * vj.clone();
                    }
                }
            }
            v = next;
        }
        v.reverse();
        v
    }
}

impl<T: Field> Matrix<T> {
    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self[(r, col)].is_zero()) else {
                continue;
            };
            if p != row {
                for c in 0..self.cols {
                    self.data.swap(p * self.cols + c, row * self.cols + c);
                }
            }
            let inv = T::one() / self[(row, col)].clone();
            for c in col..self.cols {
                self[(row, c)] = self[(row, c)].clone() * inv.clone();
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let f = self[(r, col)].clone();
                for c in col..self.cols {
                    self[(r, c)] = self[(r, c)].clone() - f.clone() * self[(row, c)].clone();
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right null space `{v : A v = 0}`.
    pub fn null_space(&self) -> Vec<Vec<T>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }
}

/// Evaluate a polynomial (constant term first) at `t`.
pub fn poly_eval<T: Ring>(coeffs: &[T], t: &T) -> T {
    coeffs
        .iter()
        .rev()
        .fold(T::zero(), |acc, c| acc * t.clone() + c.clone())
}

/// Divide a monic-or-not polynomial by `(t - root)`, assuming exact division.
pub fn poly_deflate<T: Ring>(coeffs: &[T], root: &T) -> Vec<T> {
    let n = coeffs.len();
    if n <= 1 {
        return Vec::new();
    }
    let mut out = vec![T::zero(); n - 1];
    let mut carry = T::zero();
    for i in (1..n).rev() {
        carry = coeffs[i].clone() + carry * root.clone();
        out[i - 1] = carry.clone();
    }
    out
}

/// Integer roots of an integer polynomial with multiplicity, searched in
/// `[-bound, bound]`, plus the cofactor left after removing them.
pub fn integer_roots(coeffs: &[BigInt], bound: i64) -> (Vec<(i64, usize)>, Vec<BigInt>) {
    let mut rest = coeffs.to_vec();
    let mut roots = Vec::new();
    for r in -bound..=bound {
        let t = BigInt::from(r);
        let mut mult = 0;
        while rest.len() > 1 && poly_eval(&rest, &t).is_zero() {
            rest = poly_deflate(&rest, &t);
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    (roots, rest)
}

/// Residues modulo a prime `P < 2^32`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ModP<const P: u64>(u64);

impl<const P: u64> ModP<P> {
    pub fn new(v: i64) -> Self {
        ModP(v.rem_euclid(P as i64) as u64)
    }
    pub fn value(self) -> u64 {
        self.0
    }
    fn pow(self, mut e: u64) -> Self {
        let mut acc = 1u64;
        let mut b = self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        ModP(acc)
    }
}

impl<const P: u64> fmt::Debug for ModP<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for ModP<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        ModP((self.0 + o.0) % P)
    }
}
impl<const P: u64> Sub for ModP<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        ModP((self.0 + P - o.0) % P)
    }
}
impl<const P: u64> Mul for ModP<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        ModP(self.0 * o.0 % P)
    }
}
impl<const P: u64> Div for ModP<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        assert!(o.0 != 0, "division by zero mod {P}");
        self * o.pow(P - 2)
    }
}
impl<const P: u64> Rem for ModP<P> {
    type Output = Self;
    fn rem(self, _: Self) -> Self {
        ModP(0)
    }
}
impl<const P: u64> Neg for ModP<P> {
    type Output = Self;
    fn neg(self) -> Self {
        ModP((P - self.0) % P)
    }
}
impl<const P: u64> Zero for ModP<P> {
    fn zero() -> Self {
        ModP(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}
impl<const P: u64> One for ModP<P> {
    fn one() -> Self {
        ModP(1 % P)
    }
}
impl<const P: u64> Num for ModP<P> {
    type FromStrRadixErr = std::num::ParseIntError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        i64::from_str_radix(s, radix).map(Self::new)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn rref_and_null_space() {
        let m = Matrix::from_fn(2, 3, |r, c| q([[1, 2, 3], [2, 4, 7]][r][c]));
        assert_eq!(m.rank(), 2);
        let ns = m.null_space();
        assert_eq!(ns.len(), 1);
        assert!(m.mul_vec(&ns[0]).iter().all(|x| x.is_zero()));
    }

    #[test]
    fn charpoly_small() {
        // [[2,1],[1,2]] -> t^2 - 4t + 3
        let m = Matrix::from_fn(2, 2, |r, c| BigInt::from([[2, 1], [1, 2]][r][c]));
        let cp = m.charpoly();
        assert_eq!(cp, vec![3.into(), (-4).into(), 1.into()]);
        let (roots, rest) = integer_roots(&cp, 10);
        assert_eq!(roots, vec![(1, 1), (3, 1)]);
        assert_eq!(rest, vec![BigInt::from(1)]);
    }

    #[test]
    fn float_and_modp_instantiations() {
        let m = Matrix::from_fn(2, 2, |r, c| [[1.0f64, 2.0], [3.0, 6.0]][r][c]);
        assert_eq!(m.rank(), 1);
        let m = Matrix::from_fn(2, 2, |r, c| ModP::<7>::new([[1, 2], [3, 6]][r][c]));
        assert_eq!(m.rank(), 1);
        let m = Matrix::from_fn(2, 2, |r, c| ModP::<5>::new([[1, 2], [3, 1]][r][c]));
        // det = 1 - 6 = -5 = 0 mod 5
        assert_eq!(m.rank(), 1);
    }

    proptest! {
        // Cayley-Hamilton: p(A) = 0.
        #[test]
        fn cayley_hamilton(entries in proptest::collection::vec(-5i64..6, 16)) {
            let a = Matrix::from_fn(4, 4, |r, c| BigInt::from(entries[4 * r + c]));
            let cp = a.charpoly();
            prop_assert_eq!(cp.len(), 5);
            let mut acc = Matrix::<BigInt>::zeros(4, 4);
            for c in cp.iter().rev() {
                acc = acc.matmul(&a);
                for i in 0..4 {
                    acc[(i, i)] = acc[(i, i)].clone() + c.clone();
                }
            }
            prop_assert!(acc.data.iter().all(|x| x.is_zero()));
        }

        #[test]
        fn null_space_is_annihilated(entries in proptest::collection::vec(-3i64..4, 12)) {
            let a = Matrix::from_fn(3, 4, |r, c| q(entries[4 * r + c]));
            let ns = a.null_space();
            prop_assert_eq!(ns.len() + a.rank(), 4);
            for v in ns {
                prop_assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
            }
        }
    }
}
