use alloc::vec::Vec;
use core::fmt;

use super::ContextHypergraph;
use crate::{Error, Result};

/// A value of a partial two-valued assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Value {
    Zero,
    One,
    Undefined,
}

impl Value {
    pub fn is_definite(self) -> bool {
        self != Value::Undefined
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Value::Zero => "0",
            Value::One => "1",
            Value::Undefined => "-",
        })
    }
}

/// A total map from the vertices of one hypergraph to [`Value`], with
/// `Undefined` as an explicit value.
///
/// The order in which vertices were explicitly set is remembered; the
/// first vertex set to `One` anchors [`propagate`](super::propagate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialAssignment {
    values: Vec<Value>,
    seeded: Vec<usize>,
}

impl PartialAssignment {
    /// The all-`Undefined` assignment on `h`.
    pub fn new(h: &ContextHypergraph) -> Self {
        Self { values: alloc::vec![Value::Undefined; h.vertex_count()], seeded: Vec::new() }
    }

    /// Assignment with the given labelled values, set in order.
    pub fn from_labels(h: &ContextHypergraph, values: &[(&str, Value)]) -> Result<Self> {
        let mut a = Self::new(h);
        for &(label, value) in values {
            a.set(h, label, value)?;
        }
        Ok(a)
    }

    /// Wraps raw values indexed by vertex.
    pub fn from_values(h: &ContextHypergraph, values: Vec<Value>) -> Result<Self> {
        if values.len() != h.vertex_count() {
            return Err(Error::DimensionMismatch { expected: h.vertex_count(), found: values.len() });
        }
        Ok(Self { values, seeded: Vec::new() })
    }

    pub fn set(&mut self, h: &ContextHypergraph, label: &str, value: Value) -> Result<()> {
        let v = h.vertex(label)?;
        self.set_index(v, value);
        Ok(())
    }

    pub fn set_index(&mut self, vertex: usize, value: Value) {
        self.values[vertex] = value;
        self.seeded.retain(|&s| s != vertex);
        if value.is_definite() {
            self.seeded.push(vertex);
        }
    }

    pub fn get(&self, h: &ContextHypergraph, label: &str) -> Result<Value> {
        Ok(self.values[h.vertex(label)?])
    }

    /// Values indexed by vertex.
    pub fn values(&self) -> &[Value] {
        &self.values
    }

    /// Explicitly set definite vertices, in the order they were set.
    pub fn seed_order(&self) -> &[usize] {
        &self.seeded
    }

    pub fn is_total(&self) -> bool {
        self.values.iter().all(|v| v.is_definite())
    }

    /// Number of vertices with a definite value.
    pub fn definite_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_definite()).count()
    }

    /// Vertices with the given value, in index order.
    pub fn vertices_with(&self, value: Value) -> Vec<usize> {
        (0..self.values.len()).filter(|&v| self.values[v] == value).collect()
    }

    pub(crate) fn values_mut(&mut self) -> &mut Vec<Value> {
        &mut self.values
    }
}

/// How a context fails admissibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    /// Two or more members are `One`.
    MultipleOnes,
    /// Every member is `Zero`; no completion can exist.
    AllZero,
    /// A member is `One` while another is still `Undefined`.
    OpenExclusivity,
    /// All members but one are `Zero` and the last is `Undefined`.
    OpenCompleteness,
}

impl ViolationKind {
    /// Violations that no extension of the assignment can repair.
    pub fn is_contradiction(self) -> bool {
        matches!(self, ViolationKind::MultipleOnes | ViolationKind::AllZero)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Violation {
    pub context: usize,
    pub kind: ViolationKind,
}

/// Lists every context breaking the admissibility rules, in context order.
pub fn check_admissible(h: &ContextHypergraph, v: &PartialAssignment) -> Result<Vec<Violation>> {
    if v.values.len() != h.vertex_count() {
        return Err(Error::DimensionMismatch { expected: h.vertex_count(), found: v.values.len() });
    }
    let mut out = Vec::new();
    for (c, members) in h.contexts().iter().enumerate() {
        if let Some(kind) = classify_context(members, &v.values) {
            out.push(Violation { context: c, kind });
        }
    }
    Ok(out)
}

pub(crate) fn counts(members: &[usize], values: &[Value]) -> (usize, usize, usize) {
    let mut ones = 0;
    let mut zeros = 0;
    for &m in members {
        match values[m] {
            Value::One => ones += 1,
            Value::Zero => zeros += 1,
            Value::Undefined => {}
        }
    }
    (ones, zeros, members.len() - ones - zeros)
}

fn classify_context(members: &[usize], values: &[Value]) -> Option<ViolationKind> {
    let (ones, zeros, undefined) = counts(members, values);
    if ones >= 2 {
        Some(ViolationKind::MultipleOnes)
    } else if zeros == members.len() {
        Some(ViolationKind::AllZero)
    } else if ones == 1 && undefined > 0 {
        Some(ViolationKind::OpenExclusivity)
    } else if ones == 0 && undefined == 1 {
        Some(ViolationKind::OpenCompleteness)
    } else {
        None
    }
}
