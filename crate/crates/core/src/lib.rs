//! Simulation core for binary quantum random number generation from
//! value-indefinite observables.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only pure
//! computation:
//!
//! * [`linalg`]: dense complex vectors, unitaries and projectors in `C^n`.
//! * [`contextuality`]: context hypergraphs, admissibility propagation,
//!   TIFS/TITS gadget classification and two-valued state enumeration.
//! * [`optics`]: beam-splitter networks, path-sum simulation and
//!   triangular decomposition of unitaries.
//! * [`qrng`]: value-indefinite state preparation, Born-rule sampling and
//!   ternary to binary conversion.
//!
//! Sampling uses a seeded classical pseudo-random generator. It reproduces
//! the probability structure of the quantum protocol, not the
//! unpredictability of a physical device.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod constants;
pub mod contextuality;
mod error;
pub mod linalg;
pub mod optics;
pub mod qrng;

pub use error::{Error, Result};
pub use num_complex::Complex64;
