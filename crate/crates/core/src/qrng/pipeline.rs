use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_complex::Complex64;

use super::stream::{sample_probabilities, Alphabet, StreamMeta, SymbolStream, GENERATOR};
use super::{build_vi_state, merge_postprocess, outcome_distribution, Distribution, MeasurementSetup};
use crate::constants;
use crate::linalg::{complete_unitary_from_rows, StateVector, UnitaryMatrix};
use crate::optics::{network_unitary, three_port_network};
use crate::{Error, Result};

/// Names accepted by [`Preset::named`].
pub const PRESET_NAMES: [&str; 4] = ["Ux-a010", "Ux-a100", "merged-Eq6", "fig5"];

/// How ternary outcomes become bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryMode {
    /// Sample the ternary setup and map `0 -> 1`, `1, 2 -> 0`.
    Morphism,
    /// Sample the setup followed by a merging stage; the two live output
    /// ports become bits 0 and 1 in port order.
    UnitaryMerge,
}

/// A measurement setup paired with the stage that merges its outputs
/// down to two live ports.
#[derive(Clone, Debug, PartialEq)]
pub struct Preset {
    pub name: String,
    pub setup: MeasurementSetup,
    pub merge: UnitaryMatrix,
}

impl Preset {
    /// Built-in setups:
    ///
    /// * `Ux-a010`: `U_x` on `e_1`, outcomes `(1/2, 0, 1/2)`.
    /// * `Ux-a100`: `U_x` on `e_0`, outcomes `(1/4, 1/2, 1/4)`.
    /// * `merged-Eq6`: `U' U_x` on `e_0`, outcomes `(1/2, 1/2, 0)`.
    /// * `fig5`: the three-port splitter network on `e_0`, outcomes
    ///   `(1/2, 1/4, 1/4)`, merged by folding ports 1 and 2.
    ///
    /// The `U_x` setups merge through `U'`.
    pub fn named(name: &str) -> Result<Self> {
        let ux = constants::u_x();
        let (setup, merge) = match name {
            "Ux-a010" => (MeasurementSetup::standard(StateVector::basis(3, 1), ux)?, constants::u_prime()),
            "Ux-a100" => (MeasurementSetup::standard(StateVector::basis(3, 0), ux)?, constants::u_prime()),
            "merged-Eq6" => {
                let base = MeasurementSetup::standard(StateVector::basis(3, 0), ux)?;
                (merge_postprocess(&constants::u_prime(), &base)?, UnitaryMatrix::identity(3))
            }
            "fig5" => {
                let u = network_unitary(&three_port_network())?;
                (MeasurementSetup::standard(constants::ket_a(), u)?, constants::u_prime_two_to_one())
            }
            other => return Err(Error::UnknownPreset(other.to_string())),
        };
        Ok(Self { name: name.to_string(), setup, merge })
    }

    /// Prepares the value-indefinite state of `d`, measured directly, and
    /// merged by folding every port but the first into one.
    pub fn from_distribution(d: &Distribution) -> Result<Self> {
        let psi = build_vi_state(d);
        let merge = fold_unitary(&psi)?;
        let n = psi.dim();
        let setup = MeasurementSetup::standard(psi, UnitaryMatrix::identity(n))?;
        Ok(Self { name: String::from("distribution"), setup, merge })
    }

    /// Analytic outcome probabilities of the unmerged setup.
    pub fn outcome_probabilities(&self) -> Vec<f64> {
        outcome_distribution(&self.setup)
    }

    /// Outcome probabilities sampled in `mode`, together with the bit each
    /// outcome maps to (`None`: outcome outside the binary labeling).
    pub fn binary_plan(&self, mode: BinaryMode) -> Result<(Vec<f64>, Vec<Option<u8>>)> {
        match mode {
            BinaryMode::Morphism => {
                let probs = outcome_distribution(&self.setup);
                if probs.len() != 3 {
                    return Err(Error::Alphabet("morphism needs a ternary setup"));
                }
                Ok((probs, alloc::vec![Some(1), Some(0), Some(0)]))
            }
            BinaryMode::UnitaryMerge => {
                let merged = merge_postprocess(&self.merge, &self.setup)?;
                let probs = outcome_distribution(&merged);
                let mut ranked: Vec<usize> = (0..probs.len()).collect();
                ranked.sort_by(|&x, &y| probs[y].total_cmp(&probs[x]).then(x.cmp(&y)));
                let mut live = [ranked[0], ranked[1]];
                live.sort_unstable();
                let labels = (0..probs.len())
                    .map(|k| live.iter().position(|&l| l == k).map(|b| b as u8))
                    .collect();
                Ok((probs, labels))
            }
        }
    }
}

/// Unitary with first row `e_0` and second row `<chi|`, where `chi` is the
/// normalized part of `psi` on ports `1..n`. It maps `psi` to
/// `(psi_0, |chi'|, 0, ..., 0)`, folding every port but the first into
/// port 1.
pub fn fold_unitary(psi: &StateVector) -> Result<UnitaryMatrix> {
    let n = psi.dim();
    if n < 2 {
        return Err(Error::InvalidState("folding needs at least two ports"));
    }
    let zero = Complex64::new(0.0, 0.0);
    let mut first = alloc::vec![zero; n];
    first[0] = Complex64::new(1.0, 0.0);
    let tail: Vec<Complex64> = psi.amplitudes()[1..].to_vec();
    let norm = libm::sqrt(tail.iter().map(|z| z.norm_sqr()).sum::<f64>());
    let mut second = alloc::vec![zero; n];
    if norm == 0.0 {
        second[1] = Complex64::new(1.0, 0.0);
    } else {
        for (k, z) in tail.iter().enumerate() {
            second[k + 1] = z.conj() / norm;
        }
    }
    complete_unitary_from_rows(&[first, second])
}

/// Maps sampled outcomes through `labels`, dropping unlabeled outcomes.
/// Returns the bits and the number of dropped outcomes.
pub fn label_outcomes(outcomes: &[u8], labels: &[Option<u8>]) -> (Vec<u8>, usize) {
    let mut dropped = 0;
    let bits = outcomes
        .iter()
        .filter_map(|&o| {
            let b = labels.get(o as usize).copied().flatten();
            if b.is_none() {
                dropped += 1;
            }
            b
        })
        .collect();
    (bits, dropped)
}

/// `count` draws of `preset` converted to bits in `mode`.
pub fn binary_pipeline(preset: &Preset, count: usize, seed: u64, mode: BinaryMode) -> Result<SymbolStream> {
    let (probs, labels) = preset.binary_plan(mode)?;
    let outcomes = sample_probabilities(&probs, count, seed);
    Ok(assemble_binary(preset, mode, seed, &outcomes, &labels))
}

/// Builds the binary stream record from already sampled outcomes.
pub fn assemble_binary(
    preset: &Preset,
    mode: BinaryMode,
    seed: u64,
    outcomes: &[u8],
    labels: &[Option<u8>],
) -> SymbolStream {
    let (symbols, dust_events) = label_outcomes(outcomes, labels);
    let mode_name = match mode {
        BinaryMode::Morphism => "morphism",
        BinaryMode::UnitaryMerge => "merge",
    };
    SymbolStream {
        alphabet: Alphabet::Binary,
        meta: StreamMeta {
            seed,
            generator: GENERATOR.into(),
            count: symbols.len(),
            setup: format!("{} {}", preset.name, mode_name),
            dust_events,
        },
        symbols,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12)
    }

    #[test]
    fn preset_distributions() {
        let expect = [
            ("Ux-a010", [0.5, 0.0, 0.5]),
            ("Ux-a100", [0.25, 0.5, 0.25]),
            ("merged-Eq6", [0.5, 0.5, 0.0]),
            ("fig5", [0.5, 0.25, 0.25]),
        ];
        for (name, p) in expect {
            assert!(close(&Preset::named(name).unwrap().outcome_probabilities(), &p), "{name}");
        }
        assert!(matches!(Preset::named("nope"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn merge_plans_are_balanced() {
        for name in PRESET_NAMES {
            let (probs, labels) = Preset::named(name).unwrap().binary_plan(BinaryMode::UnitaryMerge).unwrap();
            assert!(close(&probs, &[0.5, 0.5, 0.0]), "{name}: {probs:?}");
            assert_eq!(labels, [Some(0), Some(1), None]);
        }
    }

    #[test]
    fn morphism_and_merge_give_the_same_binary_law() {
        // Binary probabilities induced by each route, computed analytically.
        let morph = |name: &str| {
            let (p, l) = Preset::named(name).unwrap().binary_plan(BinaryMode::Morphism).unwrap();
            let ones: f64 = p.iter().zip(&l).filter(|(_, b)| **b == Some(1)).map(|(p, _)| p).sum();
            ones
        };
        assert!((morph("Ux-a010") - 0.5).abs() < 1e-15);
        assert!((morph("fig5") - 0.5).abs() < 1e-15);
        assert!((morph("Ux-a100") - 0.25).abs() < 1e-15);
        let (p, l) = Preset::named("merged-Eq6").unwrap().binary_plan(BinaryMode::UnitaryMerge).unwrap();
        let ones: f64 = p.iter().zip(&l).filter(|(_, b)| **b == Some(1)).map(|(p, _)| p).sum();
        assert!((ones - 0.5).abs() < 1e-15);
    }

    #[test]
    fn folding_a_distribution() {
        let d = Distribution::new(alloc::vec![0.2, 0.3, 0.1, 0.4]).unwrap();
        let preset = Preset::from_distribution(&d).unwrap();
        let (probs, labels) = preset.binary_plan(BinaryMode::UnitaryMerge).unwrap();
        assert!(close(&probs, &[0.2, 0.8, 0.0, 0.0]));
        assert_eq!(labels, [Some(0), Some(1), None, None]);
        assert!(preset.binary_plan(BinaryMode::Morphism).is_err());
    }

    #[test]
    fn pipeline_is_deterministic() {
        let p = Preset::named("Ux-a100").unwrap();
        let a = binary_pipeline(&p, 5000, 7, BinaryMode::Morphism).unwrap();
        assert_eq!(a, binary_pipeline(&p, 5000, 7, BinaryMode::Morphism).unwrap());
        assert_eq!(a.len(), 5000);
        assert!(binary_pipeline(&p, 0, 7, BinaryMode::UnitaryMerge).unwrap().is_empty());
    }

    #[test]
    fn unlabeled_outcomes_are_counted() {
        let (bits, dropped) = label_outcomes(&[0, 2, 1, 2], &[Some(0), Some(1), None]);
        assert_eq!(bits, [0, 1]);
        assert_eq!(dropped, 2);
    }
}
