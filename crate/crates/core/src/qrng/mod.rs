//! Generation protocol: prepare a value-indefinite state, measure it in a
//! basis, and turn the outcomes into symbol streams.
//!
//! Outcomes are drawn from a seeded ChaCha20 generator. The streams follow
//! the Born-rule probabilities of the simulated setup exactly, but they are
//! only as unpredictable as the pseudo-random generator driving them; the
//! quantum unpredictability of a physical device cannot be simulated.

mod pipeline;
mod stream;

pub use pipeline::{
    assemble_binary, binary_pipeline, fold_unitary, label_outcomes, BinaryMode, Preset, PRESET_NAMES,
};
pub use stream::{
    apply_morphism, sample, sample_probabilities, sample_segment, segment_seed, Alphabet,
    StreamMeta, SymbolStream, GENERATOR, SEGMENT_LEN,
};

use alloc::vec::Vec;

use crate::linalg::{is_orthonormal_context, projector_from_state, Projector, StateVector, UnitaryMatrix};
use crate::{Error, Result};

/// Tolerance on the total probability of a [`Distribution`].
pub const EPS_PROB: f64 = 1e-12;

/// Target outcome probabilities `(p_0, ..., p_{n-1})` of a value-indefinite
/// preparation: `n >= 3`, each `0 <= p_i < 1`, summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.len() < 3 {
            return Err(Error::InvalidDistribution("need at least three outcomes"));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(Error::InvalidDistribution("probabilities must be finite and nonnegative"));
        }
        if probs.iter().any(|&p| p >= 1.0) {
            return Err(Error::InvalidDistribution("each probability must be below 1"));
        }
        let total: f64 = probs.iter().sum();
        if libm::fabs(total - 1.0) > EPS_PROB {
            return Err(Error::InvalidDistribution("probabilities must sum to 1"));
        }
        Ok(Self { probs })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// Measurement basis `{f_i}`.
#[derive(Clone, Debug, PartialEq)]
pub enum Basis {
    /// `f_i = e_i`.
    Standard,
    /// `f_i = M e_i`, the columns of `M`; the measurement bras `<f_i|` are
    /// the rows of `M^dagger`.
    ImagesOf(UnitaryMatrix),
}

/// Prepared state, the unitary acting on it, and the measurement basis.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasurementSetup {
    prepared: StateVector,
    operator: UnitaryMatrix,
    basis: Basis,
}

impl MeasurementSetup {
    pub fn new(prepared: StateVector, operator: UnitaryMatrix, basis: Basis) -> Result<Self> {
        let n = prepared.dim();
        if operator.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, found: operator.dim() });
        }
        if let Basis::ImagesOf(m) = &basis {
            if m.dim() != n {
                return Err(Error::DimensionMismatch { expected: n, found: m.dim() });
            }
        }
        Ok(Self { prepared, operator, basis })
    }

    /// Measurement of `operator |prepared>` in the standard basis.
    pub fn standard(prepared: StateVector, operator: UnitaryMatrix) -> Result<Self> {
        Self::new(prepared, operator, Basis::Standard)
    }

    pub fn dim(&self) -> usize {
        self.prepared.dim()
    }

    pub fn prepared(&self) -> &StateVector {
        &self.prepared
    }

    pub fn operator(&self) -> &UnitaryMatrix {
        &self.operator
    }

    pub fn basis(&self) -> &Basis {
        &self.basis
    }

    /// The state reaching the detectors, `operator |prepared>`.
    pub fn output_state(&self) -> StateVector {
        self.operator.apply(&self.prepared).expect("dimensions checked at construction")
    }
}

/// `|psi> = (sqrt p_0, ..., sqrt p_{n-1})`.
pub fn build_vi_state(d: &Distribution) -> StateVector {
    StateVector::normalized(
        d.probs.iter().map(|&p| num_complex::Complex64::new(libm::sqrt(p), 0.0)).collect(),
    )
    .expect("a distribution has a nonzero entry")
}

/// Born-rule probabilities `p_i = |<f_i| U |psi>|^2`.
///
/// Degenerate results (some `p_i = 1`) are allowed here; only prepared
/// distributions are restricted.
pub fn outcome_distribution(setup: &MeasurementSetup) -> Vec<f64> {
    let out = setup.output_state();
    match &setup.basis {
        Basis::Standard => out.probabilities(),
        Basis::ImagesOf(m) => m
            .adjoint()
            .as_matrix()
            .apply(out.amplitudes())
            .expect("dimensions checked at construction")
            .iter()
            .map(|z| z.norm_sqr())
            .collect(),
    }
}

/// Checks that `U` reproduces `d` in both protocol variants: measuring
/// `U |psi>` in the basis `f_i = U e_i`, and measuring `U (U^dagger |psi>)`
/// in the standard basis.
pub fn universal_measurement_check(d: &Distribution, u: &UnitaryMatrix) -> bool {
    if u.dim() != d.len() {
        return false;
    }
    let psi = build_vi_state(d);
    let close = |probs: Vec<f64>| {
        probs.iter().zip(d.probs()).all(|(p, q)| libm::fabs(p - q) < 1e-10)
    };
    let Ok(images) = MeasurementSetup::new(psi.clone(), u.clone(), Basis::ImagesOf(u.clone())) else {
        return false;
    };
    let Ok(pre) = u.adjoint().apply(&psi) else {
        return false;
    };
    let Ok(preprocessed) = MeasurementSetup::standard(pre, u.clone()) else {
        return false;
    };
    close(outcome_distribution(&images)) && close(outcome_distribution(&preprocessed))
}

/// Serial composition: the same preparation and basis with operator
/// `u_post * operator`.
pub fn merge_postprocess(u_post: &UnitaryMatrix, setup: &MeasurementSetup) -> Result<MeasurementSetup> {
    let operator = crate::linalg::compose(u_post, &setup.operator)?;
    Ok(MeasurementSetup { operator, ..setup.clone() })
}

/// Sum of the projectors onto every context member except `keep`: the
/// rank `n - 1` observable of "not `keep`".
pub fn merged_complement_projector(context: &[StateVector], keep: usize) -> Result<Projector> {
    if !is_orthonormal_context(context) {
        return Err(Error::NotAContext);
    }
    if keep >= context.len() {
        return Err(Error::InvalidQuery("kept index outside the context"));
    }
    let parts = context
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != keep)
        .map(|(_, v)| projector_from_state(v))
        .collect::<Result<Vec<_>>>()?;
    Projector::sum(&parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants;
    use crate::linalg::{random_unitary, unit_f64, Matrix};
    use rand_chacha::rand_core::{RngCore, SeedableRng};
    use rand_chacha::ChaCha20Rng;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn distribution_validation() {
        assert!(Distribution::new(alloc::vec![0.5, 0.25, 0.25]).is_ok());
        assert!(Distribution::new(alloc::vec![0.5, 0.5, 0.0]).is_ok());
        assert!(Distribution::new(alloc::vec![1.0, 0.0, 0.0]).is_err());
        assert!(Distribution::new(alloc::vec![0.5, 0.5]).is_err());
        assert!(Distribution::new(alloc::vec![0.5, 0.25, 0.2]).is_err());
        assert!(Distribution::new(alloc::vec![1.5, -0.25, -0.25]).is_err());
        assert!(Distribution::new(alloc::vec![f64::NAN, 0.5, 0.5]).is_err());
    }

    #[test]
    fn vi_states() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let cases = [
            (alloc::vec![0.5, 0.25, 0.25], [h, 0.5, 0.5]),
            (alloc::vec![0.5, 0.5, 0.0], [h, h, 0.0]),
            (alloc::vec![1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0], [libm::sqrt(1.0 / 3.0); 3]),
        ];
        for (p, amps) in cases {
            let psi = build_vi_state(&Distribution::new(p).unwrap());
            for (z, a) in psi.amplitudes().iter().zip(amps) {
                assert!((z.re - a).abs() < 1e-15 && z.im == 0.0);
            }
        }
    }

    #[test]
    fn outcome_distributions_of_fixed_setups() {
        let ux = constants::u_x();
        let e = |k| StateVector::basis(3, k);
        let p = outcome_distribution(&MeasurementSetup::standard(e(1), ux.clone()).unwrap());
        assert!(close(&p, &[0.5, 0.0, 0.5], 1e-15));
        assert_eq!(p[1], 0.0);
        // U_x e_0 = (1/2, 1/sqrt 2, 1/2): the half-probability outcome is 1.
        let p = outcome_distribution(&MeasurementSetup::standard(e(0), ux.clone()).unwrap());
        assert!(close(&p, &[0.25, 0.5, 0.25], 1e-15));
        let p = outcome_distribution(&MeasurementSetup::standard(e(0), constants::u_prime_u_x()).unwrap());
        assert!(close(&p, &[0.5, 0.5, 0.0], 1e-15));
    }

    #[test]
    fn measuring_in_the_image_basis_recovers_the_distribution() {
        let mut rng = ChaCha20Rng::seed_from_u64(9);
        let d = Distribution::new(alloc::vec![0.2, 0.3, 0.5]).unwrap();
        let u = random_unitary(3, &mut rng);
        let setup = MeasurementSetup::new(build_vi_state(&d), u.clone(), Basis::ImagesOf(u)).unwrap();
        assert!(close(&outcome_distribution(&setup), d.probs(), 1e-12));
    }

    #[test]
    fn universality_examples() {
        let d = Distribution::new(alloc::vec![0.5, 0.25, 0.25]).unwrap();
        assert!(universal_measurement_check(&d, &UnitaryMatrix::identity(3)));
        assert!(universal_measurement_check(&d, &constants::u_x()));
        assert!(!universal_measurement_check(&d, &UnitaryMatrix::identity(4)));
    }

    #[test]
    fn universality_on_random_pairs() {
        let mut rng = ChaCha20Rng::seed_from_u64(10);
        for _ in 0..100 {
            let n = 3 + (rng.next_u32() % 3) as usize;
            let raw: Vec<f64> = (0..n).map(|_| unit_f64(&mut rng) + 1e-3).collect();
            let total: f64 = raw.iter().sum();
            let mut probs: Vec<f64> = raw.iter().map(|x| x / total).collect();
            let head: f64 = probs[..n - 1].iter().sum();
            probs[n - 1] = 1.0 - head;
            let d = Distribution::new(probs).unwrap();
            let u = random_unitary(n, &mut rng);
            assert!(universal_measurement_check(&d, &u));
        }
    }

    #[test]
    fn post_processing_examples() {
        let setup = MeasurementSetup::standard(constants::ket_a(), constants::u_x()).unwrap();
        let merged = merge_postprocess(&constants::u_prime(), &setup).unwrap();
        assert!(close(&outcome_distribution(&merged), &[0.5, 0.5, 0.0], 1e-15));
        let same = merge_postprocess(&UnitaryMatrix::identity(3), &setup).unwrap();
        assert!(close(&outcome_distribution(&same), &outcome_distribution(&setup), 1e-15));

        let net = MeasurementSetup::standard(constants::ket_a(), constants::u_network()).unwrap();
        let folded = merge_postprocess(&constants::u_prime_two_to_one(), &net).unwrap();
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let expected = StateVector::from_real(&[h, h, 0.0]).unwrap();
        assert!(folded.output_state().equal_up_to_phase(&expected, 1e-15));
        assert!(merge_postprocess(&UnitaryMatrix::identity(4), &setup).is_err());
    }

    #[test]
    fn complement_projectors() {
        let ctx = [constants::ket_b(), constants::ket_2(), constants::ket_3()];
        let e23 = merged_complement_projector(&ctx, 0).unwrap();
        assert!(e23.as_matrix().max_abs_diff(&constants::projector_23_printed()) < 1e-15);
        let eb = projector_from_state(&constants::ket_b()).unwrap();
        let total = eb.as_matrix().add(e23.as_matrix()).unwrap();
        assert!(total.max_abs_diff(&Matrix::identity(3)) < 1e-15);

        let std_ctx: Vec<StateVector> = (0..3).map(|k| StateVector::basis(3, k)).collect();
        let p = merged_complement_projector(&std_ctx, 0).unwrap();
        let expected = Matrix::from_real(3, &[0., 0., 0., 0., 1., 0., 0., 0., 1.]).unwrap();
        assert_eq!(p.as_matrix(), &expected);

        let not_ctx = [constants::ket_a(), constants::ket_b(), constants::ket_3()];
        assert_eq!(merged_complement_projector(&not_ctx, 0), Err(Error::NotAContext));
    }
}
