//! Fixed vectors and operators of the three-dimensional construction.
//!
//! Labels follow the observables of the built-in hypergraph: `a = e_0`,
//! `5 = e_1`, `4 = e_2`, with `b`, `2`, `3` rotated away from them.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use num_complex::Complex64;

use crate::linalg::{Matrix, StateVector, UnitaryMatrix};

fn sv(amps: &[f64]) -> StateVector {
    StateVector::new(amps.iter().map(|&x| Complex64::new(x, 0.0)).collect())
        .expect("constant vector is normalized")
}

fn unitary(scale: f64, entries: &[f64]) -> UnitaryMatrix {
    let scaled: Vec<f64> = entries.iter().map(|x| x * scale).collect();
    let m = Matrix::from_real(3, &scaled).expect("3x3 constant");
    UnitaryMatrix::new(m).expect("constant matrix is unitary")
}

pub fn ket_a() -> StateVector {
    sv(&[1.0, 0.0, 0.0])
}

pub fn ket_b() -> StateVector {
    sv(&[FRAC_1_SQRT_2, 0.5, 0.5])
}

pub fn ket_2() -> StateVector {
    sv(&[0.0, FRAC_1_SQRT_2, -FRAC_1_SQRT_2])
}

pub fn ket_3() -> StateVector {
    sv(&[FRAC_1_SQRT_2, -0.5, -0.5])
}

pub fn ket_4() -> StateVector {
    sv(&[0.0, 0.0, 1.0])
}

pub fn ket_5() -> StateVector {
    sv(&[0.0, 1.0, 0.0])
}

/// The universal splitter `U_x = 1/2 [[1, r, 1], [r, 0, -r], [1, -r, 1]]`
/// with `r = sqrt 2`. Real symmetric with spectrum `{1, 1, -1}`.
pub fn u_x() -> UnitaryMatrix {
    unitary(0.5, &[1.0, SQRT_2, 1.0, SQRT_2, 0.0, -SQRT_2, 1.0, -SQRT_2, 1.0])
}

/// Post-processing stage that folds outputs 0 and 2 of `U_x |a>` together.
pub fn u_prime() -> UnitaryMatrix {
    let s = SQRT_2;
    unitary(
        1.0 / (2.0 * SQRT_2),
        &[1.0 + s, s, 1.0 - s, 1.0 - s, s, 1.0 + s, s, -2.0, s],
    )
}

/// The merged stage `U' U_x`.
pub fn u_prime_u_x() -> UnitaryMatrix {
    unitary(FRAC_1_SQRT_2, &[1.0, 1.0, 0.0, 1.0, -1.0, 0.0, 0.0, 0.0, SQRT_2])
}

/// Real orthogonal `V` with `V^T U_x V = U' U_x`.
pub fn v_conjugator() -> UnitaryMatrix {
    let inner = libm::sqrt(2.0 + libm::sqrt(3.0));
    let sm = libm::sqrt(2.0 - inner);
    let sp = libm::sqrt(2.0 + inner);
    let r3 = libm::sqrt(3.0);
    let r6 = libm::sqrt(6.0);
    unitary(
        1.0,
        &[
            sm / (2.0 * r3),
            sp / (2.0 * r3),
            libm::sqrt(2.0 / 3.0),
            -sm / r6,
            -sp / r6,
            1.0 / r3,
            sp / 2.0,
            -sm / 2.0,
            0.0,
        ],
    )
}

/// `U = |b><a| + |2><4| + |3><5|`, realized by the three-port network.
pub fn u_network() -> UnitaryMatrix {
    let h = FRAC_1_SQRT_2;
    unitary(1.0, &[h, h, 0.0, 0.5, -0.5, h, 0.5, -0.5, -h])
}

/// Stage that merges output ports 1 and 2 of [`u_network`] into port 1.
pub fn u_prime_two_to_one() -> UnitaryMatrix {
    unitary(FRAC_1_SQRT_2, &[SQRT_2, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 1.0, -1.0])
}

/// `E_b` entered entrywise, for cross-checking the projector construction.
pub fn projector_b_printed() -> Matrix {
    let h = FRAC_1_SQRT_2;
    let half: Vec<f64> =
        [1.0, h, h, h, 0.5, 0.5, h, 0.5, 0.5].iter().map(|x| x * 0.5).collect();
    Matrix::from_real(3, &half).expect("3x3")
}

/// `E_3` entered entrywise.
pub fn projector_3_printed() -> Matrix {
    let h = FRAC_1_SQRT_2;
    let half: Vec<f64> =
        [1.0, -h, -h, -h, 0.5, 0.5, -h, 0.5, 0.5].iter().map(|x| x * 0.5).collect();
    Matrix::from_real(3, &half).expect("3x3")
}

/// `E_{2,3} = E_2 + E_3` entered entrywise.
pub fn projector_23_printed() -> Matrix {
    let h = FRAC_1_SQRT_2;
    let half: Vec<f64> =
        [1.0, -h, -h, -h, 1.5, -0.5, -h, -0.5, 1.5].iter().map(|x| x * 0.5).collect();
    Matrix::from_real(3, &half).expect("3x3")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{projector_from_state, Projector};

    #[test]
    fn all_constants_construct() {
        for u in [u_x(), u_prime(), u_prime_u_x(), v_conjugator(), u_network(), u_prime_two_to_one()] {
            assert!(u.as_matrix().unitarity_residual() < 1e-14);
            assert!(u.eigenvalues().is_ok());
        }
    }

    #[test]
    fn u_network_maps_a_4_5_to_b_2_3() {
        let u = u_network();
        assert!(u.apply(&ket_a()).unwrap().equal_up_to_phase(&ket_b(), 1e-15));
        assert!(u.apply(&ket_4()).unwrap().equal_up_to_phase(&ket_2(), 1e-15));
        assert!(u.apply(&ket_5()).unwrap().equal_up_to_phase(&ket_3(), 1e-15));
    }

    #[test]
    fn printed_projectors_match_construction() {
        let e3 = projector_from_state(&ket_3()).unwrap();
        assert!(e3.as_matrix().max_abs_diff(&projector_3_printed()) < 1e-15);
        let e2 = projector_from_state(&ket_2()).unwrap();
        let e23 = Projector::sum(&[e2, e3]).unwrap();
        assert_eq!(e23.rank(), 2);
        assert!(e23.as_matrix().max_abs_diff(&projector_23_printed()) < 1e-15);
        let eb = projector_from_state(&ket_b()).unwrap();
        let total = eb.as_matrix().add(e23.as_matrix()).unwrap();
        assert!(total.max_abs_diff(&Matrix::identity(3)) < 1e-15);
    }

    #[test]
    fn merging_stage_folds_two_ports() {
        let out = u_prime_two_to_one().apply(&u_network().apply(&ket_a()).unwrap()).unwrap();
        let expected = sv(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]);
        assert!(out.equal_up_to_phase(&expected, 1e-15));
    }
}
