use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};

use super::{BeamSplitterNetwork, Element, PhaseElement, SplitterElement};
use crate::linalg::UnitaryMatrix;
use crate::Result;

/// Triangular decomposition into `n(n-1)/2` splitters and `n` phase
/// shifters.
///
/// Sub-diagonal entries are nulled column by column, bottom row first, by
/// left-multiplying with inverse splitters on rows `(c, j)`. What remains
/// is a diagonal phase matrix `D`, so `U = T_1 ... T_m D`: the network
/// applies `D` as input phase shifters and then the splitters in reverse
/// nulling order. Angles satisfy `omega` in `[0, pi/2]`, `phi` in
/// `[0, 2 pi)`; when the entry to null is already zero the splitter is
/// fully transmitting (`omega = pi/2`, `phi = 0`).
pub fn decompose(u: &UnitaryMatrix) -> Result<BeamSplitterNetwork> {
    let n = u.dim();
    let mut m = u.as_matrix().clone();
    let mut splitters: Vec<SplitterElement> = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for c in 0..n.saturating_sub(1) {
        for j in (c + 1..n).rev() {
            let x = m[(c, c)];
            let y = m[(j, c)];
            let (omega, phi) = if y.norm() == 0.0 {
                (FRAC_PI_2, 0.0)
            } else {
                (libm::atan2(x.norm(), y.norm()), wrap(x.arg() - y.arg()))
            };
            let s = SplitterElement { i: c, j, omega, phi };
            // Left-multiply rows (c, j) by the adjoint block.
            let b = s.block();
            for col in 0..n {
                let top = m[(c, col)];
                let bot = m[(j, col)];
                m[(c, col)] = b[0][0].conj() * top + b[1][0].conj() * bot;
                m[(j, col)] = b[0][1].conj() * top + b[1][1].conj() * bot;
            }
            splitters.push(s);
        }
    }
    let mut elements: Vec<Element> = (0..n)
        .map(|k| Element::Phase(PhaseElement { port: k, phase: wrap(m[(k, k)].arg()) }))
        .collect();
    elements.extend(splitters.into_iter().rev().map(Element::Splitter));
    BeamSplitterNetwork::new(n, elements)
}

fn wrap(angle: f64) -> f64 {
    let r = libm::fmod(angle, TAU);
    let r = if r < 0.0 { r + TAU } else { r };
    if r >= TAU { 0.0 } else { r }
}
