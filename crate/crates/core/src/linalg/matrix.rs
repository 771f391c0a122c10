use alloc::vec::Vec;
use core::ops::{Index, IndexMut, Mul};

use num_complex::Complex64;

use super::{StateVector, EPS_MAT};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: alloc::vec![ZERO; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |r, c| if r == c { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// Builds a `dim x dim` matrix from row-major entries.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, found: data.len() });
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from a list of rows, which must form a square.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: row.len() });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix with real row-major entries.
    pub fn from_real(dim: usize, entries: &[f64]) -> Result<Self> {
        Self::from_vec(dim, entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        &self.data[r * self.dim..(r + 1) * self.dim]
    }

    pub fn column(&self, c: usize) -> Vec<Complex64> {
        (0..self.dim).map(|r| self[(r, c)]).collect()
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self[(c, r)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self[(k, k)]).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|z| z * s).collect() }
    }

    /// Entrywise sum.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        Ok(Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        })
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let n = self.dim;
        Ok(Self::from_fn(n, |r, c| (0..n).map(|k| self[(r, k)] * other[(k, c)]).sum()))
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        Ok((0..self.dim)
            .map(|r| self.row(r).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Largest absolute entrywise difference; infinite on dimension mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `max |A^dagger A - I|` over entries.
    pub fn unitarity_residual(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: other.dim });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Complex64;
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.data[r * self.dim + c]
    }
}

/// Panics on dimension mismatch; use [`Matrix::matmul`] for a checked product.
impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.matmul(rhs).expect("matrix dimensions agree")
    }
}

impl Mul<&Matrix> for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        &self * rhs
    }
}

/// A matrix with `U^dagger U = I` within [`EPS_MAT`].
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryMatrix(Matrix);

impl UnitaryMatrix {
    /// Validates unitarity; fails with the residual `max |U^dagger U - I|`.
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NotUnitary { residual: f64::INFINITY });
        }
        let residual = m.unitarity_residual();
        if residual >= EPS_MAT {
            return Err(Error::NotUnitary { residual });
        }
        Ok(Self(m))
    }

    pub fn identity(dim: usize) -> Self {
        Self(Matrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    /// `U |psi>`.
    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        StateVector::new(self.0.apply(psi.amplitudes())?)
    }

    /// Row `r` of the matrix as a state vector.
    pub fn row_state(&self, r: usize) -> StateVector {
        StateVector::from_unit_amplitudes(self.0.row(r).to_vec())
    }

    /// Column `c` of the matrix as a state vector.
    pub fn column_state(&self, c: usize) -> StateVector {
        StateVector::from_unit_amplitudes(self.0.column(c))
    }

    /// Eigenvalues, each checked to lie on the unit circle within `1e-8`.
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>> {
        let values = super::eigenvalues(&self.0)?;
        if values.iter().any(|z| libm::fabs(z.norm() - 1.0) > 1e-8) {
            return Err(Error::Numerical("unitary eigenvalue off the unit circle"));
        }
        Ok(values)
    }
}

/// Hermitian idempotent matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Projector {
    matrix: Matrix,
    rank: usize,
}

impl Projector {
    /// Validates `P = P^dagger`, `P^2 = P` and an integral trace.
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_finite() {
            return Err(Error::NotAProjector { residual: f64::INFINITY });
        }
        let hermitian = m.max_abs_diff(&m.adjoint());
        let idempotent = (&m * &m).max_abs_diff(&m);
        let residual = hermitian.max(idempotent);
        if residual >= EPS_MAT {
            return Err(Error::NotAProjector { residual });
        }
        let trace = m.trace().re;
        let rank = libm::round(trace);
        if libm::fabs(trace - rank) >= EPS_MAT {
            return Err(Error::NotAProjector { residual: libm::fabs(trace - rank) });
        }
        Ok(Self { matrix: m, rank: rank as usize })
    }

    /// Rank-1 projector onto the span of a nonzero vector; the input need
    /// not be normalized.
    pub fn from_amplitudes(amps: &[Complex64]) -> Result<Self> {
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite amplitude"));
        }
        let norm_sqr: f64 = amps.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr == 0.0 || amps.is_empty() {
            return Err(Error::InvalidState("zero vector"));
        }
        let n = amps.len();
        let matrix = Matrix::from_fn(n, |r, c| amps[r] * amps[c].conj() / norm_sqr);
        Ok(Self { matrix, rank: 1 })
    }

    /// Sum of projectors; the result must itself be a projector, which
    /// holds when the summands are mutually orthogonal.
    pub fn sum(parts: &[Projector]) -> Result<Self> {
        let first = parts.first().ok_or(Error::InvalidState("empty projector sum"))?;
        let mut acc = first.matrix.clone();
        for p in &parts[1..] {
            acc = acc.add(&p.matrix)?;
        }
        Self::new(acc)
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// `I - P`.
    pub fn complement(&self) -> Self {
        let n = self.dim();
        let matrix = Matrix::from_fn(n, |r, c| {
            let id = if r == c { ONE } else { ZERO };
            id - self.matrix[(r, c)]
        });
        Self { matrix, rank: n - self.rank }
    }
}
