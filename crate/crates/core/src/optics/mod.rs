//! Lossless linear-optical networks of two-port beam splitters, mirrors
//! and phase shifters acting on single-photon mode amplitudes.
//!
//! A splitter on ports `(i, j)` acts as
//! `B(omega, phi) = [[sin w, cos w], [e^{-i phi} cos w, -e^{-i phi} sin w]]`
//! on the amplitudes of those ports, so its transmissivity is
//! `T = sin^2 omega`.

mod decompose;
mod paths;

pub use decompose::decompose;
pub use paths::{forward_paths, path_contributions, PathContribution};

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::linalg::{Matrix, UnitaryMatrix};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SplitterElement {
    /// Lower port index.
    pub i: usize,
    /// Upper port index, `j > i`.
    pub j: usize,
    pub omega: f64,
    pub phi: f64,
}

impl SplitterElement {
    /// Splitter with transmissivity `t` in `[0, 1]`.
    pub fn with_transmissivity(i: usize, j: usize, t: f64, phi: f64) -> Self {
        Self { i, j, omega: libm::asin(libm::sqrt(t.clamp(0.0, 1.0))), phi }
    }

    pub fn transmissivity(&self) -> f64 {
        let s = libm::sin(self.omega);
        s * s
    }

    /// The 2x2 block `[[m_ii, m_ij], [m_ji, m_jj]]`.
    pub fn block(&self) -> [[Complex64; 2]; 2] {
        let s = Complex64::new(libm::sin(self.omega), 0.0);
        let c = Complex64::new(libm::cos(self.omega), 0.0);
        let e = Complex64::from_polar(1.0, -self.phi);
        [[s, c], [e * c, -e * s]]
    }
}

/// Phase `e^{i phase}` on one port.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PhaseElement {
    pub port: usize,
    pub phase: f64,
}

impl PhaseElement {
    pub fn factor(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phase)
    }
}

/// A fully reflecting splitter (`T = 0`) whose second port is an unused
/// stub. The live amplitude is reflected with factor `e^{-i phi}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MirrorElement {
    pub port: usize,
    pub phi: f64,
}

impl MirrorElement {
    pub fn factor(&self) -> Complex64 {
        Complex64::from_polar(1.0, -self.phi)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Element {
    Splitter(SplitterElement),
    Phase(PhaseElement),
    Mirror(MirrorElement),
}

/// Elements in the order a photon traverses them.
#[derive(Clone, Debug, PartialEq)]
pub struct BeamSplitterNetwork {
    dim: usize,
    elements: Vec<Element>,
}

impl BeamSplitterNetwork {
    /// Validates port indices and angle finiteness.
    pub fn new(dim: usize, elements: Vec<Element>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidState("network needs at least one port"));
        }
        for e in &elements {
            let (ports_ok, angles) = match *e {
                Element::Splitter(s) => (s.i < s.j && s.j < dim, [s.omega, s.phi]),
                Element::Phase(p) => (p.port < dim, [p.phase, 0.0]),
                Element::Mirror(m) => (m.port < dim, [m.phi, 0.0]),
            };
            if !ports_ok {
                return Err(Error::InvalidState("element port out of range or misordered"));
            }
            if angles.iter().any(|a| !a.is_finite()) {
                return Err(Error::InvalidState("non-finite element angle"));
            }
        }
        Ok(Self { dim, elements })
    }

    pub fn empty(dim: usize) -> Self {
        Self { dim, elements: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn splitters(&self) -> impl Iterator<Item = &SplitterElement> {
        self.elements.iter().filter_map(|e| match e {
            Element::Splitter(s) => Some(s),
            _ => None,
        })
    }
}

/// Ordered product of the element matrices: the last element applied is
/// the leftmost factor.
pub fn network_unitary(net: &BeamSplitterNetwork) -> Result<UnitaryMatrix> {
    let mut m = Matrix::identity(net.dim);
    for e in &net.elements {
        apply_left(&mut m, e);
    }
    UnitaryMatrix::new(m)
}

/// `m <- E m` for the embedded element matrix `E`.
fn apply_left(m: &mut Matrix, e: &Element) {
    let n = m.dim();
    match *e {
        Element::Splitter(s) => {
            let b = s.block();
            for col in 0..n {
                let x = m[(s.i, col)];
                let y = m[(s.j, col)];
                m[(s.i, col)] = b[0][0] * x + b[0][1] * y;
                m[(s.j, col)] = b[1][0] * x + b[1][1] * y;
            }
        }
        Element::Phase(p) => scale_row(m, p.port, p.factor()),
        Element::Mirror(r) => scale_row(m, r.port, r.factor()),
    }
}

fn scale_row(m: &mut Matrix, row: usize, f: Complex64) {
    for col in 0..m.dim() {
        m[(row, col)] *= f;
    }
}

/// The three-port triangular network realizing
/// `U = |b><a| + |2><4| + |3><5|` on input modes `(a, 5, 4) = (0, 1, 2)`.
///
/// Each diagonal turn is a mirror with `phi = pi/2`; the splitters have
/// transmissivities `2/3, 3/4, 2/3` with `phi = pi/2`, preceded by input
/// phase shifters `3pi/2, pi/2, 0`.
pub fn three_port_network() -> BeamSplitterNetwork {
    let ps = |port, phase| Element::Phase(PhaseElement { port, phase });
    let mr = |port| Element::Mirror(MirrorElement { port, phi: FRAC_PI_2 });
    let bs = |i, j, t| Element::Splitter(SplitterElement::with_transmissivity(i, j, t, FRAC_PI_2));
    let elements = alloc::vec![
        ps(0, 3.0 * PI / 2.0),
        ps(1, FRAC_PI_2),
        ps(2, 0.0),
        mr(2),
        ps(2, FRAC_PI_2),
        bs(1, 2, 2.0 / 3.0),
        ps(2, 0.0),
        mr(1),
        ps(1, 0.0),
        bs(0, 2, 3.0 / 4.0),
        bs(0, 1, 2.0 / 3.0),
        mr(0),
    ];
    BeamSplitterNetwork::new(3, elements).expect("valid constant network")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constants;

    #[test]
    fn empty_network_is_identity() {
        let u = network_unitary(&BeamSplitterNetwork::empty(3)).unwrap();
        assert_eq!(u.as_matrix(), &Matrix::identity(3));
    }

    #[test]
    fn single_phase_shifter() {
        let net = BeamSplitterNetwork::new(3, alloc::vec![Element::Phase(PhaseElement { port: 0, phase: PI })]).unwrap();
        let u = network_unitary(&net).unwrap();
        let expected = Matrix::from_real(3, &[-1., 0., 0., 0., 1., 0., 0., 0., 1.]).unwrap();
        assert!(u.as_matrix().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn splitter_block_is_unitary() {
        let s = SplitterElement::with_transmissivity(0, 1, 0.3, 1.1);
        let net = BeamSplitterNetwork::new(2, alloc::vec![Element::Splitter(s)]).unwrap();
        assert!(network_unitary(&net).is_ok());
        assert!((s.transmissivity() - 0.3).abs() < 1e-15);
    }

    #[test]
    fn bad_ports_are_rejected() {
        let s = SplitterElement { i: 1, j: 1, omega: 0.0, phi: 0.0 };
        assert!(BeamSplitterNetwork::new(3, alloc::vec![Element::Splitter(s)]).is_err());
        let p = PhaseElement { port: 3, phase: 0.0 };
        assert!(BeamSplitterNetwork::new(3, alloc::vec![Element::Phase(p)]).is_err());
    }

    #[test]
    fn three_port_network_matches_target_columnwise() {
        let u = network_unitary(&three_port_network()).unwrap();
        let target = constants::u_network();
        for c in 0..3 {
            assert!(u.column_state(c).equal_up_to_phase(&target.column_state(c), 1e-12), "column {c}");
        }
    }

    #[test]
    fn transmissivities_read_back() {
        let t: Vec<f64> = three_port_network().splitters().map(|s| s.transmissivity()).collect();
        let expected = [2.0 / 3.0, 3.0 / 4.0, 2.0 / 3.0];
        assert_eq!(t.len(), 3);
        for (x, y) in t.iter().zip(expected) {
            assert!((x - y).abs() < 1e-14);
        }
    }
}
