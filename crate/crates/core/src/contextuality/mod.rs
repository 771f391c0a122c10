//! Context hypergraphs, partial two-valued assignments and the
//! admissibility calculus on them.
//!
//! A context is a maximal set of mutually exclusive observables (an
//! orthonormal basis in the quantum realization). Admissibility requires
//! that no context carries two `One`s (exclusivity) and that a context with
//! all but one member `Zero` carries a `One` on the remaining member
//! (completeness).

mod assignment;
pub mod builtin;
mod coordinatization;
mod enumerate;
mod hypergraph;
mod propagate;

pub use assignment::{check_admissible, PartialAssignment, Value, Violation, ViolationKind};
pub use coordinatization::{verify_coordinatization, Coordinatization, OrthogonalityViolation};
pub use enumerate::{
    classify_gadget, enumerate_two_valued_states, is_unital, GadgetClass, Unitality,
};
pub use hypergraph::ContextHypergraph;
pub use propagate::{propagate, propagate_in_order, Derivation, Propagation, Rule};
