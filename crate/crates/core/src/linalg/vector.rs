use alloc::vec::Vec;

use num_complex::Complex64;

use super::EPS_NORM;
use crate::{Error, Result};

/// Unit vector in `C^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    /// Wraps amplitudes whose Euclidean norm is 1 within [`EPS_NORM`].
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        check_finite_nonzero(&amps)?;
        let norm = norm_of(&amps);
        if libm::fabs(norm - 1.0) >= EPS_NORM {
            return Err(Error::InvalidState("vector is not normalized"));
        }
        Ok(Self { amps })
    }

    /// Divides a nonzero vector by its norm.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self> {
        check_finite_nonzero(&amps)?;
        let norm = norm_of(&amps);
        amps.iter_mut().for_each(|z| *z /= norm);
        Ok(Self { amps })
    }

    /// Real amplitudes, normalized.
    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::normalized(amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Standard basis vector `e_index` of `C^dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut amps = alloc::vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    pub(crate) fn from_unit_amplitudes(amps: Vec<Complex64>) -> Self {
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        norm_of(&self.amps)
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// Squared moduli of the amplitudes.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|z| z.norm_sqr()).collect()
    }

    /// True iff `other = e^{i theta} self` within `tol` (max entry
    /// difference). The phase is read off the largest-magnitude component.
    pub fn equal_up_to_phase(&self, other: &Self, tol: f64) -> bool {
        equal_up_to_phase(&self.amps, &other.amps, tol)
    }
}

pub(crate) fn equal_up_to_phase(a: &[Complex64], b: &[Complex64], tol: f64) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some((k, _)) = a
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
    else {
        return true;
    };
    if a[k].norm() == 0.0 || b[k].norm() == 0.0 {
        return a.iter().chain(b).all(|z| z.norm() < tol);
    }
    let ratio = b[k] / a[k];
    let phase = ratio / ratio.norm();
    a.iter().zip(b).all(|(x, y)| (x * phase - y).norm() < tol)
}

fn norm_of(amps: &[Complex64]) -> f64 {
    libm::sqrt(amps.iter().map(|z| z.norm_sqr()).sum())
}

fn check_finite_nonzero(amps: &[Complex64]) -> Result<()> {
    if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::InvalidState("non-finite amplitude"));
    }
    if amps.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        return Err(Error::InvalidState("zero vector"));
    }
    Ok(())
}
