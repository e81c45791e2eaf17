//! Skew-symmetric matrices, Pfaffians and dense Gaussian elimination over
//! either the exact scalars or `Complex64`.

use num_complex::Complex64;
use thiserror::Error;

use crate::arith::AlgebraicScalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("Pfaffian of an odd-dimensional matrix ({0})")]
    OddDimension(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
}

/// What elimination needs from a scalar type.
pub trait FieldElem: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    /// Only called with a nonzero divisor.
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Pivot preference; exact types return 0 or 1 so the first nonzero wins.
    fn pivot_weight(&self) -> f64;
}

impl FieldElem for AlgebraicScalar {
    fn zero_like(&self) -> Self {
        AlgebraicScalar::zero(self.base())
    }
    fn one_like(&self) -> Self {
        AlgebraicScalar::one(self.base())
    }
    fn is_zero(&self) -> bool {
        AlgebraicScalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self.checked_div(other).expect("nonzero pivot")
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pivot_weight(&self) -> f64 {
        if AlgebraicScalar::is_zero(self) {
            0.0
        } else {
            1.0
        }
    }
}

impl FieldElem for Complex64 {
    fn zero_like(&self) -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one_like(&self) -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        *self == Complex64::new(0.0, 0.0)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn pivot_weight(&self) -> f64 {
        self.norm()
    }
}

/// Below this dimension Pfaffians are expanded along the first row.
pub const EXPANSION_MAX_DIM: usize = 12;

/// Skew-symmetric matrix stored as its strict upper triangle.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewMatrix<T> {
    dim: usize,
    upper: Vec<T>,
    zero: T,
}

impl<T: FieldElem> SkewMatrix<T> {
    /// `zero` fixes the scalar ring (e.g. the base of an exact scalar).
    pub fn zeros(dim: usize, zero: T) -> Self {
        let upper = vec![zero.clone(); dim * dim.saturating_sub(1) / 2];
        Self { dim, upper, zero }
    }

    /// Builds from `f(i, j)` for `i < j`.
    pub fn from_fn(dim: usize, zero: T, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut m = Self::zeros(dim, zero);
        for i in 0..dim {
            for j in i + 1..dim {
                let k = m.index(i, j);
                m.upper[k] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn index(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.dim);
        i * (2 * self.dim - i - 1) / 2 + (j - i - 1)
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.upper[self.index(i, j)].clone(),
            std::cmp::Ordering::Greater => self.upper[self.index(j, i)].neg(),
            std::cmp::Ordering::Equal => self.zero.clone(),
        }
    }

    /// Sets `(i, j)` and, implicitly, `(j, i)` to the negation.
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        assert_ne!(i, j, "diagonal of a skew matrix is fixed at zero");
        if i < j {
            let k = self.index(i, j);
            self.upper[k] = v;
        } else {
            let k = self.index(j, i);
            self.upper[k] = v.neg();
        }
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), self.zero.clone(), |a, b| self.get(idx[a], idx[b]))
    }

    pub fn add(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.dim != other.dim {
            return Err(LinalgError::DimensionMismatch(self.dim, other.dim));
        }
        let upper = self.upper.iter().zip(&other.upper).map(|(a, b)| a.add(b)).collect();
        Ok(Self { dim: self.dim, upper, zero: self.zero.clone() })
    }

    pub fn map<U: FieldElem>(&self, zero: U, f: impl Fn(&T) -> U) -> SkewMatrix<U> {
        SkewMatrix { dim: self.dim, upper: self.upper.iter().map(f).collect(), zero }
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        DenseMatrix::from_fn(self.dim, self.dim, self.zero.clone(), |i, j| self.get(i, j))
    }

    pub fn pfaffian(&self) -> Result<T, LinalgError> {
        if self.dim % 2 == 1 {
            return Err(LinalgError::OddDimension(self.dim));
        }
        if self.dim <= EXPANSION_MAX_DIM {
            let idx: Vec<usize> = (0..self.dim).collect();
            Ok(self.pfaffian_expansion(&idx))
        } else {
            Ok(self.pfaffian_elimination())
        }
    }

    /// `Pf(A) = Σ_{j≥2} (−1)^j a_{1j} Pf(A with rows/cols 1, j removed)`, skipping zero entries.
    fn pfaffian_expansion(&self, idx: &[usize]) -> T {
        if idx.is_empty() {
            return self.zero.one_like();
        }
        let first = idx[0];
        let mut acc = self.zero.clone();
        for k in 1..idx.len() {
            let a = self.get(first, idx[k]);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx[1..].iter().enumerate().filter(|&(m, _)| m + 1 != k).map(|(_, &v)| v).collect();
            let minor = self.pfaffian_expansion(&rest);
            if minor.is_zero() {
                continue;
            }
            let term = a.mul(&minor);
            // k is the 0-based position, so the sign is (−1)^{k+1}
            acc = if k % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    /// Skew elimination: bring a pivot to position (0, 1), then
    /// `Pf(A) = a₀₁ · Pf(D′)` with `D′ᵢₖ = Aᵢₖ + (A₁ᵢA₀ₖ − A₀ᵢA₁ₖ)/a₀₁` on the remaining indices.
    fn pfaffian_elimination(&self) -> T {
        let mut a: Vec<Vec<T>> = (0..self.dim).map(|i| (0..self.dim).map(|j| self.get(i, j)).collect()).collect();
        let mut result = self.zero.one_like();
        while !a.is_empty() {
            let n = a.len();
            let mut best = 1;
            for j in 2..n {
                if a[0][j].pivot_weight() > a[0][best].pivot_weight() {
                    best = j;
                }
            }
            if a[0][best].is_zero() {
                return self.zero.clone();
            }
            if best != 1 {
                a.swap(1, best);
                for row in a.iter_mut() {
                    row.swap(1, best);
                }
                result = result.neg();
            }
            let pivot = a[0][1].clone();
            result = result.mul(&pivot);
            let mut next = Vec::with_capacity(n - 2);
            for i in 2..n {
                let mut row = Vec::with_capacity(n - 2);
                for k in 2..n {
                    if i == k {
                        row.push(self.zero.clone());
                        continue;
                    }
                    let cross = a[1][i].mul(&a[0][k]).sub(&a[0][i].mul(&a[1][k]));
                    row.push(if cross.is_zero() { a[i][k].clone() } else { a[i][k].add(&cross.div(&pivot)) });
                }
                next.push(row);
            }
            a = next;
        }
        result
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    zero: T,
}

impl<T: FieldElem> DenseMatrix<T> {
    pub fn from_fn(rows: usize, cols: usize, zero: T, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data, zero }
    }

    pub fn identity(n: usize, zero: T) -> Self {
        let one = zero.one_like();
        Self::from_fn(n, n, zero.clone(), |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn mul(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(self.cols, other.rows));
        }
        Ok(Self::from_fn(self.rows, other.cols, self.zero.clone(), |i, j| {
            (0..self.cols).fold(self.zero.clone(), |acc, k| {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    acc.add(&a.mul(b))
                }
            })
        }))
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.sub(&v.one_like()).is_zero()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// Largest entry modulus of `self − I`, for floating residual checks.
    pub fn identity_residual(&self) -> f64
    where
        T: Into<Complex64>,
    {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v: Complex64 = self.get(i, j).clone().into();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - target).norm());
            }
        }
        worst
    }

    fn square_rows(&self) -> Result<Vec<Vec<T>>, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::DimensionMismatch(self.rows, self.cols));
        }
        Ok((0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect())
    }

    fn choose_pivot(a: &[Vec<T>], col: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (r, row) in a.iter().enumerate().skip(col) {
            if row[col].is_zero() {
                continue;
            }
            if best.map_or(true, |b| row[col].pivot_weight() > a[b][col].pivot_weight()) {
                best = Some(r);
            }
        }
        best
    }

    pub fn determinant(&self) -> Result<T, LinalgError> {
        let mut a = self.square_rows()?;
        let n = a.len();
        let mut det = self.zero.one_like();
        for col in 0..n {
            let Some(p) = Self::choose_pivot(&a, col) else {
                return Ok(self.zero.clone());
            };
            if p != col {
                a.swap(p, col);
                det = det.neg();
            }
            let pivot = a[col][col].clone();
            det = det.mul(&pivot);
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].div(&pivot);
                for c in col..n {
                    let v = a[r][c].sub(&f.mul(&a[col][c]));
                    a[r][c] = v;
                }
            }
        }
        Ok(det)
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self, LinalgError> {
        let mut a = self.square_rows()?;
        let n = a.len();
        let mut inv = Self::identity(n, self.zero.clone()).square_rows()?;
        for col in 0..n {
            let p = Self::choose_pivot(&a, col).ok_or(LinalgError::Singular)?;
            a.swap(p, col);
            inv.swap(p, col);
            let pivot = a[col][col].clone();
            for c in 0..n {
                a[col][c] = a[col][c].div(&pivot);
                inv[col][c] = inv[col][c].div(&pivot);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    if !a[col][c].is_zero() {
                        a[r][c] = a[r][c].sub(&f.mul(&a[col][c]));
                    }
                    if !inv[col][c].is_zero() {
                        inv[r][c] = inv[r][c].sub(&f.mul(&inv[col][c]));
                    }
                }
            }
        }
        Ok(Self::from_fn(n, n, self.zero.clone(), |i, j| inv[i][j].clone()))
    }
}


#[cfg(test)]
mod proptests {
    use super::*;
    use crate::arith::{rat, Base, GaussianRational};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn pfaffian_squared_is_determinant(
            dim in (0usize..=5).prop_map(|k| 2 * k),
            seed in proptest::collection::vec((-6i64..=6, -6i64..=6, 0usize..3), 45),
            quartic in any::<bool>(),
        ) {
            let b = Base::new(if quartic { rat(1, 3) } else { rat(1, 16) }).unwrap();
            let s = AlgebraicScalar::generator(&b);
            let z = AlgebraicScalar::zero(&b);
            let mut it = seed.into_iter().cycle();
            let m = SkewMatrix::from_fn(dim, z, |_, _| {
                let (a, c, kind) = it.next().unwrap();
                let g = GaussianRational::new(rat(a, 1), rat(c, 2));
                match kind {
                    0 => AlgebraicScalar::from_gaussian(g, &b),
                    1 => &AlgebraicScalar::from_gaussian(g, &b) * &s,
                    _ => AlgebraicScalar::zero(&b),
                }
            });
            let pf = m.pfaffian().unwrap();
            prop_assert_eq!(&pf * &pf, m.to_dense().determinant().unwrap());
        }
    }
}
