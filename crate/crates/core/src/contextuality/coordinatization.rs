use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::ContextHypergraph;
use crate::linalg::{StateVector, EPS_MAT};
use crate::{Error, Result};

/// Vectors attached to some vertices of a hypergraph.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Coordinatization {
    vectors: BTreeMap<usize, StateVector>,
}

impl Coordinatization {
    pub fn new() -> Self {
        Self::default()
    }

    /// Attaches `vector` to the vertex `label`; its dimension must equal
    /// the hypergraph rank.
    pub fn insert(&mut self, h: &ContextHypergraph, label: &str, vector: StateVector) -> Result<()> {
        if vector.dim() != h.rank() {
            return Err(Error::DimensionMismatch { expected: h.rank(), found: vector.dim() });
        }
        self.vectors.insert(h.vertex(label)?, vector);
        Ok(())
    }

    pub fn get(&self, vertex: usize) -> Option<&StateVector> {
        self.vectors.get(&vertex)
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

/// Two coordinatized members of one context that are not orthogonal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrthogonalityViolation {
    pub context: usize,
    pub first: usize,
    pub second: usize,
    /// `|<first|second>|`.
    pub overlap: f64,
}

/// Flags every pair of coordinatized vertices sharing a context whose
/// overlap is at least [`EPS_MAT`].
pub fn verify_coordinatization(h: &ContextHypergraph, c: &Coordinatization) -> Vec<OrthogonalityViolation> {
    let mut out = Vec::new();
    for (ctx, members) in h.contexts().iter().enumerate() {
        for (i, &u) in members.iter().enumerate() {
            for &w in &members[i + 1..] {
                if let (Some(x), Some(y)) = (c.get(u), c.get(w)) {
                    let overlap = x.inner(y).norm();
                    if overlap >= EPS_MAT {
                        out.push(OrthogonalityViolation { context: ctx, first: u, second: w, overlap });
                    }
                }
            }
        }
    }
    out
}
