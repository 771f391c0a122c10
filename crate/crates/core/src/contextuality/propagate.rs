use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use super::assignment::counts;
use super::{ContextHypergraph, PartialAssignment, Value};

/// Admissibility rule that produced a value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// A `One` in the context forces its siblings to `Zero`.
    Exclusivity,
    /// All other members `Zero` force the last one to `One`.
    Completeness,
}

/// One derived value and the context that forced it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub vertex: usize,
    pub value: Value,
    pub rule: Rule,
    pub context: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    /// No rule fires any more.
    Fixpoint { assignment: PartialAssignment, trace: Vec<Derivation> },
    /// `context` carries two `One`s or only `Zero`s. `assignment` is the
    /// state at the moment of detection.
    Contradiction { context: usize, assignment: PartialAssignment, trace: Vec<Derivation> },
}

impl Propagation {
    pub fn is_contradiction(&self) -> bool {
        matches!(self, Propagation::Contradiction { .. })
    }

    pub fn trace(&self) -> &[Derivation] {
        match self {
            Propagation::Fixpoint { trace, .. } | Propagation::Contradiction { trace, .. } => trace,
        }
    }

    pub fn assignment(&self) -> &PartialAssignment {
        match self {
            Propagation::Fixpoint { assignment, .. }
            | Propagation::Contradiction { assignment, .. } => assignment,
        }
    }

    pub fn contradiction_context(&self) -> Option<usize> {
        match self {
            Propagation::Contradiction { context, .. } => Some(*context),
            Propagation::Fixpoint { .. } => None,
        }
    }
}

struct Worklist {
    queue: VecDeque<usize>,
    queued: Vec<bool>,
}

impl Worklist {
    fn new(order: impl IntoIterator<Item = usize>, contexts: usize) -> Self {
        let queue: VecDeque<usize> = order.into_iter().collect();
        let mut queued = alloc::vec![false; contexts];
        for &c in &queue {
            queued[c] = true;
        }
        Self { queue, queued }
    }

    fn pop(&mut self) -> Option<usize> {
        let c = self.queue.pop_front()?;
        self.queued[c] = false;
        Some(c)
    }

    fn touch(&mut self, h: &ContextHypergraph, vertex: usize) {
        for &c in h.contexts_of(vertex) {
            if !self.queued[c] {
                self.queued[c] = true;
                self.queue.push_back(c);
            }
        }
    }
}

/// Applies the admissibility rules to a fixpoint or a contradiction.
///
/// Exclusivity is applied eagerly over a FIFO worklist of contexts (all
/// contexts in index order initially, then every context touching a
/// changed vertex). Completeness fires one context at a time, once the
/// worklist is empty: among the contexts waiting for their last `One`, the
/// one closest in hop distance to the anchor (the first seeded `One`, else
/// the first seeded vertex) is chosen, ties going to the most recently
/// completed-to-ready context. This keeps the derivation local to the seed,
/// so a contradiction is reported where the seed's consequences first
/// collide. The fixpoint itself does not depend on the policy.
pub fn propagate(h: &ContextHypergraph, seed: &PartialAssignment) -> Propagation {
    let mut assignment = seed.clone();
    let mut trace = Vec::new();
    let n_ctx = h.context_count();
    let anchor = seed
        .seed_order()
        .iter()
        .copied()
        .find(|&v| seed.values()[v] == Value::One)
        .or_else(|| seed.seed_order().first().copied());
    let context_distance: Vec<usize> = match anchor {
        Some(a) => {
            let d = h.hop_distances(a);
            h.contexts().iter().map(|ctx| ctx.iter().map(|&v| d[v]).min().unwrap_or(usize::MAX)).collect()
        }
        None => alloc::vec![0; n_ctx],
    };

    let mut work = Worklist::new(0..n_ctx, n_ctx);
    let mut ready: BTreeMap<usize, u64> = BTreeMap::new();
    let mut stamp = 0u64;
    loop {
        while let Some(c) = work.pop() {
            let members = h.context(c);
            let (ones, zeros, undefined) = counts(members, assignment.values());
            if ones >= 2 || zeros == members.len() {
                return Propagation::Contradiction { context: c, assignment, trace };
            }
            if ones == 1 && undefined > 0 {
                for &v in members {
                    if assignment.values()[v] == Value::Undefined {
                        assignment.values_mut()[v] = Value::Zero;
                        trace.push(Derivation { vertex: v, value: Value::Zero, rule: Rule::Exclusivity, context: c });
                        work.touch(h, v);
                    }
                }
            } else if ones == 0 && undefined == 1 {
                ready.entry(c).or_insert_with(|| {
                    stamp += 1;
                    stamp
                });
            }
        }
        ready.retain(|&c, _| {
            let (ones, _, undefined) = counts(h.context(c), assignment.values());
            ones == 0 && undefined == 1
        });
        let Some((&c, _)) = ready
            .iter()
            .min_by_key(|&(&c, &s)| (context_distance[c], core::cmp::Reverse(s)))
        else {
            return Propagation::Fixpoint { assignment, trace };
        };
        ready.remove(&c);
        let v = *h
            .context(c)
            .iter()
            .find(|&&v| assignment.values()[v] == Value::Undefined)
            .expect("ready context has an undefined member");
        assignment.values_mut()[v] = Value::One;
        trace.push(Derivation { vertex: v, value: Value::One, rule: Rule::Completeness, context: c });
        work.touch(h, v);
    }
}

/// Plain worklist propagation: both rules fire as soon as a context is
/// examined, starting from the contexts in `order` (any contexts missing
/// from `order` are appended in index order).
///
/// Reaches the same fixpoint as [`propagate`] for any order; which
/// context is reported for a contradiction may differ.
pub fn propagate_in_order(h: &ContextHypergraph, seed: &PartialAssignment, order: &[usize]) -> Propagation {
    let n_ctx = h.context_count();
    let mut initial: Vec<usize> = Vec::with_capacity(n_ctx);
    let mut seen = alloc::vec![false; n_ctx];
    for &c in order.iter().chain(&(0..n_ctx).collect::<Vec<_>>()) {
        if c < n_ctx && !seen[c] {
            seen[c] = true;
            initial.push(c);
        }
    }
    let mut assignment = seed.clone();
    let mut trace = Vec::new();
    let mut work = Worklist::new(initial, n_ctx);
    while let Some(c) = work.pop() {
        let members = h.context(c);
        let (ones, zeros, undefined) = counts(members, assignment.values());
        if ones >= 2 || zeros == members.len() {
            return Propagation::Contradiction { context: c, assignment, trace };
        }
        let (value, rule) = if ones == 1 && undefined > 0 {
            (Value::Zero, Rule::Exclusivity)
        } else if ones == 0 && undefined == 1 {
            (Value::One, Rule::Completeness)
        } else {
            continue;
        };
        for &v in members {
            if assignment.values()[v] == Value::Undefined {
                assignment.values_mut()[v] = value;
                trace.push(Derivation { vertex: v, value, rule, context: c });
                work.touch(h, v);
            }
        }
    }
    Propagation::Fixpoint { assignment, trace }
}

/// Unit propagation without bookkeeping; `false` on contradiction.
pub(crate) fn close(h: &ContextHypergraph, values: &mut [Value], start: &[usize]) -> bool {
    let n_ctx = h.context_count();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut queued = alloc::vec![false; n_ctx];
    for &v in start {
        for &c in h.contexts_of(v) {
            if !queued[c] {
                queued[c] = true;
                queue.push_back(c);
            }
        }
    }
    while let Some(c) = queue.pop_front() {
        queued[c] = false;
        let members = h.context(c);
        let (ones, zeros, undefined) = counts(members, values);
        if ones >= 2 || zeros == members.len() {
            return false;
        }
        let value = if ones == 1 && undefined > 0 {
            Value::Zero
        } else if ones == 0 && undefined == 1 {
            Value::One
        } else {
            continue;
        };
        for &v in members {
            if values[v] == Value::Undefined {
                values[v] = value;
                for &d in h.contexts_of(v) {
                    if !queued[d] {
                        queued[d] = true;
                        queue.push_back(d);
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn single_context_completes() {
        let h = ContextHypergraph::from_contexts(3, &[vec!["x", "y", "z"]]).unwrap();
        let seed = PartialAssignment::from_labels(&h, &[("x", Value::Zero), ("y", Value::Zero)]).unwrap();
        match propagate(&h, &seed) {
            Propagation::Fixpoint { assignment, trace } => {
                assert_eq!(assignment.get(&h, "z").unwrap(), Value::One);
                assert_eq!(trace, vec![Derivation { vertex: 2, value: Value::One, rule: Rule::Completeness, context: 0 }]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn violated_seed_is_reported_immediately() {
        let h = ContextHypergraph::from_contexts(3, &[vec!["x", "y", "z"]]).unwrap();
        let seed = PartialAssignment::from_labels(&h, &[("x", Value::One), ("y", Value::One)]).unwrap();
        let p = propagate(&h, &seed);
        assert_eq!(p.contradiction_context(), Some(0));
        assert!(p.trace().is_empty());
    }
}
