//! Finite-window Pfaffian L-ensembles: the matrix `J + L`, the correlation
//! kernel `K = J + (J+L)⁻¹`, and correlation functions computed both as
//! Pfaffians of K and by summing probabilities over supersets.

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use crate::arith::AlgebraicScalar;
use crate::ensemble::{l_matrix_on, labels_for, HSpec, PointLabel};
use crate::lattice::HalfInt;
use crate::linalg::{DenseMatrix, FieldElem, LinalgError, SkewMatrix};

/// Largest window handled by exact arithmetic (a 24 × 24 matrix).
pub const EXACT_MAX_POINTS: usize = 12;
/// Largest window for the floating path.
pub const FLOAT_MAX_POINTS: usize = 40;
/// Largest window for the exhaustive subset sums.
pub const SUBSET_MAX_POINTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("window radius must be a positive half-integer, got {0}")]
    BadRadius(HalfInt),
    #[error("window has {got} points, limit is {max}")]
    TooLarge { got: usize, max: usize },
    #[error("point {0} is outside the window")]
    OutsideWindow(HalfInt),
    #[error("J + L is singular on this window")]
    Singular,
    #[error("K is not skew-symmetric")]
    NotSkew,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// All points `x` with `|x| ≤ radius`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    radius: HalfInt,
    points: Vec<HalfInt>,
}

impl Window {
    pub fn new(radius: HalfInt) -> Result<Self, KernelError> {
        if !radius.is_positive() {
            return Err(KernelError::BadRadius(radius));
        }
        let r = radius.twice();
        let points = (-r..=r).step_by(2).map(|t| HalfInt::from_twice(t).expect("odd")).collect();
        Ok(Self { radius, points })
    }

    pub fn radius(&self) -> HalfInt {
        self.radius
    }

    pub fn points(&self) -> &[HalfInt] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn require(&self, max: usize) -> Result<(), KernelError> {
        if self.len() > max {
            Err(KernelError::TooLarge { got: self.len(), max })
        } else {
            Ok(())
        }
    }
}

/// `J` on the given points: blocks `[[0, 1], [−1, 0]]` on the diagonal.
pub fn assemble_j_on<T: FieldElem>(n_points: usize, zero: T) -> SkewMatrix<T> {
    let one = zero.one_like();
    SkewMatrix::from_fn(2 * n_points, zero.clone(), |i, j| {
        if i % 2 == 0 && j == i + 1 {
            one.clone()
        } else {
            zero.clone()
        }
    })
}

pub fn assemble_j(spec: &HSpec, w: &Window) -> Result<SkewMatrix<AlgebraicScalar>, KernelError> {
    w.require(EXACT_MAX_POINTS)?;
    Ok(assemble_j_on(w.len(), AlgebraicScalar::zero(spec.base())))
}

pub fn assemble_full_l(spec: &HSpec, w: &Window) -> Result<SkewMatrix<AlgebraicScalar>, KernelError> {
    w.require(EXACT_MAX_POINTS)?;
    Ok(l_matrix_on(spec, w.points()).matrix)
}

pub fn j_plus_l(spec: &HSpec, w: &Window) -> Result<SkewMatrix<AlgebraicScalar>, KernelError> {
    Ok(assemble_j(spec, w)?.add(&assemble_full_l(spec, w)?)?)
}

/// `Pf(J + L)` of the window matrix.
pub fn pf_matrix_j_plus_l(spec: &HSpec, w: &Window) -> Result<AlgebraicScalar, KernelError> {
    Ok(j_plus_l(spec, w)?.pfaffian()?)
}

/// `Pf L(X|X)` for every subset X of the window, indexed by bitmask over the window points.
pub struct SubsetTable {
    points: Vec<HalfInt>,
    pfaffians: Vec<AlgebraicScalar>,
}

impl SubsetTable {
    pub fn new(spec: &HSpec, w: &Window) -> Result<Self, KernelError> {
        w.require(SUBSET_MAX_POINTS)?;
        let full = l_matrix_on(spec, w.points()).matrix;
        let pfaffians = (0u32..1 << w.len())
            .map(|mask| {
                let idx: Vec<usize> = (0..w.len())
                    .filter(|&k| mask >> k & 1 == 1)
                    .flat_map(|k| [2 * k, 2 * k + 1])
                    .collect();
                full.submatrix(&idx).pfaffian()
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { points: w.points().to_vec(), pfaffians })
    }

    fn mask_of(&self, xs: &[HalfInt]) -> Result<u32, KernelError> {
        xs.iter().try_fold(0u32, |m, &x| {
            let k = self.points.binary_search(&x).map_err(|_| KernelError::OutsideWindow(x))?;
            Ok(m | 1 << k)
        })
    }

    /// `Σ_X Pf L(X|X)` over all subsets, the subset expansion of `Pf(J+L)`.
    pub fn total(&self) -> AlgebraicScalar {
        let zero = self.pfaffians[0].zero_like();
        self.pfaffians.iter().fold(zero, |acc, v| &acc + v)
    }

    /// `Σ_{Y ⊇ X} Pf L(Y|Y)`.
    pub fn superset_sum(&self, xs: &[HalfInt]) -> Result<AlgebraicScalar, KernelError> {
        let m = self.mask_of(xs)?;
        let zero = self.pfaffians[0].zero_like();
        Ok(self
            .pfaffians
            .iter()
            .enumerate()
            .filter(|&(y, _)| y as u32 & m == m)
            .fold(zero, |acc, (_, v)| &acc + v))
    }
}

/// `K = J + (J+L)⁻¹` with the row labels of the window.
#[derive(Clone, Debug)]
pub struct KernelMatrix<T> {
    pub labels: Vec<PointLabel>,
    pub k: SkewMatrix<T>,
    points: Vec<HalfInt>,
}

impl<T: FieldElem> KernelMatrix<T> {
    fn rows_for(&self, xs: &[HalfInt]) -> Result<Vec<usize>, KernelError> {
        let mut sorted = xs.to_vec();
        sorted.sort();
        sorted.dedup();
        sorted
            .iter()
            .map(|&x| {
                let k = self.points.binary_search(&x).map_err(|_| KernelError::OutsideWindow(x))?;
                Ok([2 * k, 2 * k + 1])
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|v| v.into_iter().flatten().collect())
    }

    /// `ρ(X) = Pf K(X|X)`.
    pub fn rho(&self, xs: &[HalfInt]) -> Result<T, KernelError> {
        Ok(self.k.submatrix(&self.rows_for(xs)?).pfaffian()?)
    }

    /// `K(x′, x″)`, the one-point correlation.
    pub fn rho_single(&self, x: HalfInt) -> Result<T, KernelError> {
        let r = self.rows_for(&[x])?;
        Ok(self.k.get(r[0], r[1]))
    }

    pub fn points(&self) -> &[HalfInt] {
        &self.points
    }
}

/// Exact `(J+L)` and its inverse together, for the identity check.
pub struct KernelComputation {
    pub j_plus_l: DenseMatrix<AlgebraicScalar>,
    pub inverse: DenseMatrix<AlgebraicScalar>,
    pub kernel: KernelMatrix<AlgebraicScalar>,
}

impl KernelComputation {
    /// `(J+L)(J+L)⁻¹ = I`, checked exactly.
    pub fn inverse_is_exact(&self) -> bool {
        self.j_plus_l.mul(&self.inverse).map(|p| p.is_identity()).unwrap_or(false)
    }
}

fn kernel_from<T: FieldElem>(
    jl: &SkewMatrix<T>,
    zero: T,
    points: &[HalfInt],
) -> Result<(DenseMatrix<T>, DenseMatrix<T>, KernelMatrix<T>), KernelError> {
    let dense = jl.to_dense();
    let inv = dense.inverse().map_err(|e| match e {
        LinalgError::Singular => KernelError::Singular,
        other => other.into(),
    })?;
    let j = assemble_j_on(points.len(), zero.clone());
    let n = dense.rows();
    let k_dense = DenseMatrix::from_fn(n, n, zero.clone(), |a, b| j.get(a, b).add(inv.get(a, b)));
    let k = SkewMatrix::from_fn(n, zero, |a, b| k_dense.get(a, b).clone());
    let labels = labels_for(points);
    Ok((dense, inv, KernelMatrix { labels, k, points: points.to_vec() }))
}

fn is_skew_exact(m: &DenseMatrix<AlgebraicScalar>) -> bool {
    (0..m.rows()).all(|i| (0..m.cols()).all(|j| (m.get(i, j) + m.get(j, i)).is_zero()))
}

/// Exact kernel on a window; fails if `K` is not skew-symmetric.
pub fn kernel_k(spec: &HSpec, w: &Window) -> Result<KernelComputation, KernelError> {
    let jl = j_plus_l(spec, w)?;
    let zero = AlgebraicScalar::zero(spec.base());
    let (dense, inv, kernel) = kernel_from(&jl, zero, w.points())?;
    if !is_skew_exact(&inv) {
        return Err(KernelError::NotSkew);
    }
    Ok(KernelComputation { j_plus_l: dense, inverse: inv, kernel })
}

/// `ρ(X) = Pf K(X|X)` from an exact kernel.
pub fn rho_pfaffian(kernel: &KernelMatrix<AlgebraicScalar>, xs: &[HalfInt]) -> Result<AlgebraicScalar, KernelError> {
    kernel.rho(xs)
}

/// `ρ(X) = Σ_{Y ⊇ X} Pf L(Y|Y) / Pf(J+L)` by exhaustive enumeration of the window.
pub fn rho_bruteforce(table: &SubsetTable, xs: &[HalfInt]) -> Result<AlgebraicScalar, KernelError> {
    let total = table.total();
    let sum = table.superset_sum(xs)?;
    sum.checked_div(&total).map_err(|_| KernelError::Singular)
}

/// Floating kernel from the exact entries of `L`, for windows too large for exact inversion.
pub fn kernel_k_float(spec: &HSpec, w: &Window) -> Result<KernelMatrix<Complex64>, KernelError> {
    w.require(FLOAT_MAX_POINTS)?;
    let l = l_matrix_on(spec, w.points()).matrix;
    let zero = Complex64::new(0.0, 0.0);
    let lf = l.map(zero, |v| v.to_complex());
    let jl = assemble_j_on(w.len(), zero).add(&lf)?;
    let (_, _, kernel) = kernel_from(&jl, zero, w.points())?;
    Ok(kernel)
}

/// One-point correlations `ρ({x})` on the points of `inner` computed in growing windows.
#[derive(Clone, Debug, Serialize)]
pub struct ConvergenceRow {
    pub radius_twice: i64,
    pub rho: Vec<(i64, f64)>,
    /// Largest change from the previous radius, if any.
    pub max_change: Option<f64>,
}

pub fn one_point_convergence(spec: &HSpec, radii: &[HalfInt]) -> Result<Vec<ConvergenceRow>, KernelError> {
    let inner = Window::new(*radii.first().ok_or(KernelError::BadRadius(HalfInt::above(-1)))?)?;
    let mut rows: Vec<ConvergenceRow> = Vec::new();
    for &r in radii {
        let kernel = kernel_k_float(spec, &Window::new(r)?)?;
        let rho: Vec<(i64, f64)> = inner
            .points()
            .iter()
            .map(|&x| Ok((x.twice(), kernel.rho_single(x)?.re)))
            .collect::<Result<_, KernelError>>()?;
        let max_change = rows.last().map(|prev| {
            prev.rho.iter().zip(&rho).map(|(a, b)| (a.1 - b.1).abs()).fold(0.0, f64::max)
        });
        rows.push(ConvergenceRow { radius_twice: r.twice(), rho, max_change });
    }
    Ok(rows)
}
