use alloc::vec::Vec;

use num_complex::Complex64;

use super::{BeamSplitterNetwork, Element};
use crate::linalg::StateVector;
use crate::{Error, Result};

/// One forward pass of a photon through the network.
#[derive(Clone, Debug, PartialEq)]
pub struct PathContribution {
    pub input_port: usize,
    pub output_port: usize,
    /// Product of the per-element factors along the path.
    pub amplitude: Complex64,
    /// Port occupied after each element, in element order.
    pub ports: Vec<usize>,
}

/// Every forward path from `input_port`, found depth-first with each
/// splitter branching into its transmitted and reflected continuation.
/// Branches whose factor is exactly zero are skipped.
pub fn path_contributions(net: &BeamSplitterNetwork, input_port: usize) -> Result<Vec<PathContribution>> {
    if input_port >= net.dim() {
        return Err(Error::DimensionMismatch { expected: net.dim(), found: input_port + 1 });
    }
    let mut out = Vec::new();
    let mut ports = Vec::with_capacity(net.elements().len());
    walk(net.elements(), 0, input_port, input_port, Complex64::new(1.0, 0.0), &mut ports, &mut out);
    Ok(out)
}

fn walk(
    elements: &[Element],
    k: usize,
    input: usize,
    port: usize,
    amp: Complex64,
    ports: &mut Vec<usize>,
    out: &mut Vec<PathContribution>,
) {
    let Some(element) = elements.get(k) else {
        out.push(PathContribution { input_port: input, output_port: port, amplitude: amp, ports: ports.clone() });
        return;
    };
    let step = |next_port: usize, factor: Complex64, ports: &mut Vec<usize>, out: &mut Vec<PathContribution>| {
        if factor == Complex64::new(0.0, 0.0) {
            return;
        }
        ports.push(next_port);
        walk(elements, k + 1, input, next_port, amp * factor, ports, out);
        ports.pop();
    };
    match *element {
        Element::Splitter(s) if port == s.i || port == s.j => {
            let b = s.block();
            let col = usize::from(port == s.j);
            step(s.i, b[0][col], ports, out);
            step(s.j, b[1][col], ports, out);
        }
        Element::Phase(p) if port == p.port => step(port, p.factor(), ports, out),
        Element::Mirror(m) if port == m.port => step(port, m.factor(), ports, out),
        _ => step(port, Complex64::new(1.0, 0.0), ports, out),
    }
}

/// Output amplitudes as the coherent sum over all forward paths from every
/// populated input port.
pub fn forward_paths(net: &BeamSplitterNetwork, input: &StateVector) -> Result<StateVector> {
    if input.dim() != net.dim() {
        return Err(Error::DimensionMismatch { expected: net.dim(), found: input.dim() });
    }
    let mut out = alloc::vec![Complex64::new(0.0, 0.0); net.dim()];
    for (port, &a) in input.amplitudes().iter().enumerate() {
        if a == Complex64::new(0.0, 0.0) {
            continue;
        }
        for p in path_contributions(net, port)? {
            out[p.output_port] += a * p.amplitude;
        }
    }
    StateVector::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants;
    use crate::optics::{network_unitary, three_port_network};
    use core::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn empty_network_passes_input_through() {
        let net = BeamSplitterNetwork::empty(3);
        let psi = StateVector::from_real(&[1.0, -2.0, 0.5]).unwrap();
        assert_eq!(forward_paths(&net, &psi).unwrap(), psi);
    }

    #[test]
    fn three_port_network_maps_preparation_to_measurement_context() {
        let net = three_port_network();
        for (input, expected) in [
            (constants::ket_a(), constants::ket_b()),
            (constants::ket_5(), constants::ket_3()),
            (constants::ket_4(), constants::ket_2()),
        ] {
            let out = forward_paths(&net, &input).unwrap();
            assert!(out.equal_up_to_phase(&expected, 1e-12));
        }
    }

    #[test]
    fn input_a_has_three_paths_with_expected_weights() {
        let paths = path_contributions(&three_port_network(), 0).unwrap();
        assert_eq!(paths.len(), 3);
        let modulus = |port: usize| -> f64 {
            paths.iter().filter(|p| p.output_port == port).map(|p| p.amplitude.norm()).sum()
        };
        let quarter = libm::sqrt(0.25);
        let three_quarters = libm::sqrt(0.75);
        assert!((modulus(2) - quarter).abs() < 1e-15);
        assert!((modulus(1) - three_quarters * libm::sqrt(1.0 / 3.0)).abs() < 1e-15);
        assert!((modulus(0) - three_quarters * libm::sqrt(2.0 / 3.0)).abs() < 1e-15);
        assert!((modulus(0) - FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn path_sum_equals_matrix_product_on_basis_inputs() {
        let net = three_port_network();
        let u = network_unitary(&net).unwrap();
        for k in 0..3 {
            let e = StateVector::basis(3, k);
            let by_paths = forward_paths(&net, &e).unwrap();
            let by_matrix = u.apply(&e).unwrap();
            let diff = by_paths
                .amplitudes()
                .iter()
                .zip(by_matrix.amplitudes())
                .map(|(x, y)| (x - y).norm())
                .fold(0.0, f64::max);
            assert!(diff < 1e-10);
        }
    }

    #[test]
    fn input_dimension_must_match() {
        let net = BeamSplitterNetwork::empty(3);
        assert!(forward_paths(&net, &StateVector::basis(4, 0)).is_err());
    }
}
