//! Dense complex linear algebra for small dimensions (`n >= 2`, mostly 3).
//!
//! Every object stores `f64` complex entries. Algebraic invariants are
//! checked at construction with the absolute tolerances [`EPS_MAT`] (max
//! entry difference) and [`EPS_NORM`] (Euclidean norm).

mod eigen;
mod matrix;
mod vector;

pub use eigen::{eigenvalue_multisets_match, eigenvalues};
pub use matrix::{Matrix, Projector, UnitaryMatrix};
pub use vector::StateVector;

use alloc::vec::Vec;
use num_complex::Complex64;
use rand_chacha::rand_core::RngCore;

use crate::{Error, Result};

/// Tolerance for matrix identities, measured as the largest absolute entry
/// difference.
pub const EPS_MAT: f64 = 1e-10;
/// Tolerance for unit-norm checks on state vectors.
pub const EPS_NORM: f64 = 1e-10;

/// Rank-1 projector `|psi><psi| / <psi|psi>` onto the span of `psi`.
pub fn projector_from_state(psi: &StateVector) -> Result<Projector> {
    Projector::from_amplitudes(psi.amplitudes())
}

/// Born-rule probability `Tr(prep * meas)`.
///
/// For rank-1 projectors `E_psi`, `E_phi` this equals `|<phi|psi>|^2`.
pub fn born_probability(prep: &Projector, meas: &Projector) -> Result<f64> {
    let product = prep.as_matrix().matmul(meas.as_matrix())?;
    Ok(product.trace().re.clamp(0.0, 1.0))
}

/// Serial composition: the matrix product `a * b` (apply `b`, then `a`).
pub fn compose(a: &UnitaryMatrix, b: &UnitaryMatrix) -> Result<UnitaryMatrix> {
    UnitaryMatrix::new(a.as_matrix().matmul(b.as_matrix())?)
}

/// Conjugate transpose.
pub fn adjoint(a: &UnitaryMatrix) -> UnitaryMatrix {
    a.adjoint()
}

/// True iff `V^dagger A V` equals `B` within [`EPS_MAT`].
///
/// Dimension mismatches yield `false`.
pub fn verify_conjugation(v: &UnitaryMatrix, a: &UnitaryMatrix, b: &UnitaryMatrix) -> bool {
    let n = v.dim();
    if a.dim() != n || b.dim() != n {
        return false;
    }
    let conjugated = v.adjoint().as_matrix() * a.as_matrix() * v.as_matrix();
    conjugated.max_abs_diff(b.as_matrix()) < EPS_MAT
}

/// True iff `vectors` is an orthonormal basis of `C^n`: exactly `n` unit
/// vectors of dimension `n`, pairwise orthogonal within [`EPS_MAT`].
pub fn is_orthonormal_context(vectors: &[StateVector]) -> bool {
    let n = match vectors.first() {
        Some(v) => v.dim(),
        None => return false,
    };
    if vectors.len() != n || vectors.iter().any(|v| v.dim() != n) {
        return false;
    }
    if vectors.iter().any(|v| libm::fabs(v.norm() - 1.0) >= EPS_NORM) {
        return false;
    }
    vectors.iter().enumerate().all(|(i, u)| {
        vectors[i + 1..]
            .iter()
            .all(|w| u.inner(w).norm() < EPS_MAT)
    })
}

/// Completes a unit row vector to a unitary whose first row is `row`.
///
/// The adjoint of the result has `row^dagger` as its first column, which
/// covers the "1-to-2" splitting form.
pub fn complete_unitary_from_first_row(row: &[Complex64]) -> Result<UnitaryMatrix> {
    complete_unitary_from_rows(&[row.to_vec()])
}

/// Completes orthonormal rows to a unitary whose leading rows are `rows`.
///
/// The remaining rows are an orthonormal basis of the orthogonal
/// complement, obtained by Gram-Schmidt over the standard basis.
pub fn complete_unitary_from_rows(rows: &[Vec<Complex64>]) -> Result<UnitaryMatrix> {
    let n = rows.first().map_or(0, Vec::len);
    if n == 0 || rows.len() > n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidState("rows must be nonempty, equal length, at most n"));
    }
    let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
        a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
    };
    for (i, r) in rows.iter().enumerate() {
        if libm::fabs(dot(r, r).re - 1.0) >= EPS_NORM {
            return Err(Error::InvalidState("row is not a unit vector"));
        }
        if rows[..i].iter().any(|q| dot(q, r).norm() >= EPS_MAT) {
            return Err(Error::InvalidState("rows are not orthogonal"));
        }
    }
    let mut out: Vec<Vec<Complex64>> = rows.to_vec();
    for k in 0..n {
        if out.len() == n {
            break;
        }
        let mut candidate: Vec<Complex64> = (0..n)
            .map(|j| if j == k { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
            .collect();
        for r in &out {
            let overlap = dot(&candidate, r);
            for (c, a) in candidate.iter_mut().zip(r) {
                *c -= overlap * a;
            }
        }
        let len = libm::sqrt(candidate.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if len > 1e-6 {
            candidate.iter_mut().for_each(|z| *z /= len);
            out.push(candidate);
        }
    }
    let data: Vec<Complex64> = out.into_iter().flatten().collect();
    UnitaryMatrix::new(Matrix::from_vec(n, data)?)
}

/// Haar-like random unitary: Gram-Schmidt on a matrix of independent
/// standard complex Gaussians.
pub fn random_unitary<R: RngCore + ?Sized>(n: usize, rng: &mut R) -> UnitaryMatrix {
    loop {
        let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
        let mut degenerate = false;
        for _ in 0..n {
            let mut v: Vec<Complex64> =
                (0..n).map(|_| Complex64::new(gaussian(rng), gaussian(rng))).collect();
            for u in &cols {
                let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (x, a) in v.iter_mut().zip(u) {
                    *x -= overlap * a;
                }
            }
            let len = libm::sqrt(v.iter().map(|z| z.norm_sqr()).sum::<f64>());
            if len < 1e-8 {
                degenerate = true;
                break;
            }
            v.iter_mut().for_each(|z| *z /= len);
            cols.push(v);
        }
        if degenerate {
            continue;
        }
        let m = Matrix::from_fn(n, |r, c| cols[c][r]);
        if let Ok(u) = UnitaryMatrix::new(m) {
            return u;
        }
    }
}

/// Uniform draw in `[0, 1)` from the top 53 bits of a 64-bit word.
pub(crate) fn unit_f64<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn gaussian<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    // Box-Muller; 1 - u keeps the logarithm finite.
    let u1 = 1.0 - unit_f64(rng);
    let u2 = unit_f64(rng);
    libm::sqrt(-2.0 * libm::log(u1)) * libm::cos(core::f64::consts::TAU * u2)
}
