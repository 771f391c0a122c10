use alloc::vec::Vec;

use super::assignment::counts;
use super::propagate::close;
use super::{propagate, ContextHypergraph, PartialAssignment, Value};
use crate::{Error, Result};

/// Outcome of testing both values of `b` under `v(a) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GadgetClass {
    /// `v(a) = 1` forbids `v(b) = 1`.
    Tifs,
    /// `v(a) = 1` forbids `v(b) = 0`.
    Tits,
    /// Both values are forbidden: `b` is value indefinite given `v(a) = 1`.
    Both,
    Neither,
}

/// Classifies the pair `(a, b)` by propagating `v(a)=1` together with
/// each value of `b`.
pub fn classify_gadget(h: &ContextHypergraph, a: &str, b: &str) -> Result<GadgetClass> {
    if a == b {
        return Err(Error::InvalidQuery("gadget endpoints must differ"));
    }
    let forbids = |bv: Value| -> Result<bool> {
        let seed = PartialAssignment::from_labels(h, &[(a, Value::One), (b, bv)])?;
        Ok(propagate(h, &seed).is_contradiction())
    };
    Ok(match (forbids(Value::One)?, forbids(Value::Zero)?) {
        (true, true) => GadgetClass::Both,
        (true, false) => GadgetClass::Tifs,
        (false, true) => GadgetClass::Tits,
        (false, false) => GadgetClass::Neither,
    })
}

/// All total assignments with exactly one `One` per context.
///
/// Branches on the unsatisfied context with the fewest open members and
/// closes each branch under unit propagation. Output is sorted
/// lexicographically by the value sequence read in label order
/// (`Zero < One`).
pub fn enumerate_two_valued_states(h: &ContextHypergraph) -> Vec<PartialAssignment> {
    let mut raw: Vec<Vec<Value>> = Vec::new();
    let mut values = alloc::vec![Value::Undefined; h.vertex_count()];
    search(h, &mut values, &mut raw);

    let mut by_label: Vec<usize> = (0..h.vertex_count()).collect();
    by_label.sort_by(|&x, &y| h.label(x).cmp(h.label(y)));
    raw.sort_by(|x, y| {
        by_label.iter().map(|&v| x[v]).cmp(by_label.iter().map(|&v| y[v]))
    });
    raw.dedup();
    raw.into_iter()
        .map(|v| PartialAssignment::from_values(h, v).expect("sized by h"))
        .collect()
}

fn search(h: &ContextHypergraph, values: &mut [Value], out: &mut Vec<Vec<Value>>) {
    let mut branch: Option<(usize, usize)> = None;
    for (c, members) in h.contexts().iter().enumerate() {
        let (ones, _, undefined) = counts(members, values);
        if ones == 0 && branch.is_none_or(|(_, best)| undefined < best) {
            branch = Some((c, undefined));
        }
    }
    let Some((c, _)) = branch else {
        // Every context holds a One; remaining vertices are forced Zero by
        // exclusivity, which propagation has already applied.
        if values.iter().all(|v| v.is_definite()) {
            out.push(values.to_vec());
        }
        return;
    };
    let open: Vec<usize> = h
        .context(c)
        .iter()
        .copied()
        .filter(|&v| values[v] == Value::Undefined)
        .collect();
    for v in open {
        let mut next = values.to_vec();
        next[v] = Value::One;
        if close(h, &mut next, &[v]) {
            search(h, &mut next, out);
        }
    }
}

/// Result of [`is_unital`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unitality {
    pub unital: bool,
    /// For each vertex, the index of the first state in `states` giving it
    /// the value `One`.
    pub witnesses: Vec<Option<usize>>,
    pub states: Vec<PartialAssignment>,
}

/// A hypergraph is unital when every vertex is `One` in some two-valued
/// state.
pub fn is_unital(h: &ContextHypergraph) -> Unitality {
    let states = enumerate_two_valued_states(h);
    let witnesses: Vec<Option<usize>> = (0..h.vertex_count())
        .map(|v| states.iter().position(|s| s.values()[v] == Value::One))
        .collect();
    let unital = witnesses.iter().all(Option::is_some);
    Unitality { unital, witnesses, states }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn single_context_has_three_states() {
        let h = ContextHypergraph::from_contexts(3, &[vec!["x", "y", "z"]]).unwrap();
        let states = enumerate_two_valued_states(&h);
        assert_eq!(states.len(), 3);
        // Lexicographic in label order with Zero < One: z=1 first.
        assert_eq!(states[0].get(&h, "z").unwrap(), Value::One);
        assert_eq!(states[2].get(&h, "x").unwrap(), Value::One);
        let u = is_unital(&h);
        assert!(u.unital);
    }

    #[test]
    fn identical_endpoints_are_rejected() {
        let h = ContextHypergraph::from_contexts(3, &[vec!["x", "y", "z"]]).unwrap();
        assert_eq!(classify_gadget(&h, "x", "x"), Err(Error::InvalidQuery("gadget endpoints must differ")));
        assert!(matches!(classify_gadget(&h, "x", "q"), Err(Error::UnknownObservable(_))));
    }

    #[test]
    fn siblings_in_one_context_are_tifs() {
        let h = ContextHypergraph::from_contexts(3, &[vec!["x", "y", "z"]]).unwrap();
        assert_eq!(classify_gadget(&h, "x", "y").unwrap(), GadgetClass::Tifs);
    }
}
