use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::{Error, Result};

/// Observables (vertices) grouped into contexts (hyperedges) of a fixed
/// size `rank`.
///
/// Vertices and contexts keep their insertion order; indices into both are
/// stable for the lifetime of the value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextHypergraph {
    rank: usize,
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    contexts: Vec<Vec<usize>>,
    incidence: Vec<Vec<usize>>,
}

impl ContextHypergraph {
    /// Builds and validates a hypergraph.
    ///
    /// Every context needs exactly `rank` distinct known vertices, no two
    /// contexts may coincide as sets, and every vertex must lie in some
    /// context.
    pub fn new<S: AsRef<str>, T: AsRef<str>>(
        rank: usize,
        vertices: &[S],
        contexts: &[Vec<T>],
    ) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidHypergraph("rank must be positive".into()));
        }
        let mut labels = Vec::with_capacity(vertices.len());
        let mut index = BTreeMap::new();
        for v in vertices {
            let label = v.as_ref();
            if label.is_empty() || label.chars().any(char::is_whitespace) {
                return Err(Error::InvalidHypergraph(format!("invalid vertex label {label:?}")));
            }
            if index.insert(label.to_string(), labels.len()).is_some() {
                return Err(Error::InvalidHypergraph(format!("duplicate vertex {label}")));
            }
            labels.push(label.to_string());
        }
        let mut resolved = Vec::with_capacity(contexts.len());
        let mut seen = BTreeSet::new();
        for ctx in contexts {
            if ctx.len() != rank {
                return Err(Error::InvalidHypergraph(format!(
                    "context {} has {} vertices, expected {rank}",
                    join(ctx.iter().map(AsRef::as_ref)),
                    ctx.len()
                )));
            }
            let mut members = Vec::with_capacity(rank);
            for v in ctx {
                let i = *index.get(v.as_ref()).ok_or_else(|| {
                    Error::InvalidHypergraph(format!("context uses unknown vertex {}", v.as_ref()))
                })?;
                if members.contains(&i) {
                    return Err(Error::InvalidHypergraph(format!(
                        "context repeats vertex {}",
                        v.as_ref()
                    )));
                }
                members.push(i);
            }
            let key: BTreeSet<usize> = members.iter().copied().collect();
            if !seen.insert(key) {
                return Err(Error::InvalidHypergraph(format!(
                    "duplicate context {}",
                    join(ctx.iter().map(AsRef::as_ref))
                )));
            }
            resolved.push(members);
        }
        let mut incidence = alloc::vec![Vec::new(); labels.len()];
        for (c, members) in resolved.iter().enumerate() {
            for &v in members {
                incidence[v].push(c);
            }
        }
        if let Some(v) = incidence.iter().position(Vec::is_empty) {
            return Err(Error::InvalidHypergraph(format!("vertex {} lies in no context", labels[v])));
        }
        Ok(Self { rank, labels, index, contexts: resolved, incidence })
    }

    /// Builds a hypergraph whose vertices are those mentioned by the
    /// contexts, in order of first appearance.
    pub fn from_contexts<S: AsRef<str>>(rank: usize, contexts: &[Vec<S>]) -> Result<Self> {
        let mut vertices: Vec<&str> = Vec::new();
        for ctx in contexts {
            for v in ctx {
                if !vertices.contains(&v.as_ref()) {
                    vertices.push(v.as_ref());
                }
            }
        }
        Self::new(rank, &vertices, contexts)
    }

    /// The sub-hypergraph with the given vertices deleted, together with
    /// every context through them and any vertex left without a context.
    pub fn without<S: AsRef<str>>(&self, removed: &[S]) -> Result<Self> {
        let mut drop = BTreeSet::new();
        for r in removed {
            drop.insert(self.vertex(r.as_ref())?);
        }
        let contexts: Vec<Vec<&str>> = self
            .contexts
            .iter()
            .filter(|ctx| ctx.iter().all(|v| !drop.contains(v)))
            .map(|ctx| ctx.iter().map(|&v| self.labels[v].as_str()).collect())
            .collect();
        let used: BTreeSet<&str> = contexts.iter().flatten().copied().collect();
        let vertices: Vec<&str> = self
            .labels
            .iter()
            .map(String::as_str)
            .filter(|l| used.contains(l))
            .collect();
        Self::new(self.rank, &vertices, &contexts)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn context_count(&self) -> usize {
        self.contexts.len()
    }

    /// Vertex labels in index order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, vertex: usize) -> &str {
        &self.labels[vertex]
    }

    /// Index of a vertex label.
    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownObservable(label.to_string()))
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    /// Member vertices of a context, in the order given at construction.
    pub fn context(&self, c: usize) -> &[usize] {
        &self.contexts[c]
    }

    pub fn contexts(&self) -> &[Vec<usize>] {
        &self.contexts
    }

    /// Labels of a context's members.
    pub fn context_labels(&self, c: usize) -> Vec<&str> {
        self.contexts[c].iter().map(|&v| self.labels[v].as_str()).collect()
    }

    /// Indices of the contexts containing `vertex`, ascending.
    pub fn contexts_of(&self, vertex: usize) -> &[usize] {
        &self.incidence[vertex]
    }

    /// Finds the context whose member set equals `labels`.
    pub fn find_context<S: AsRef<str>>(&self, labels: &[S]) -> Option<usize> {
        let wanted: BTreeSet<usize> =
            labels.iter().map(|l| self.index.get(l.as_ref()).copied()).collect::<Option<_>>()?;
        self.contexts
            .iter()
            .position(|ctx| ctx.len() == wanted.len() && ctx.iter().all(|v| wanted.contains(v)))
    }

    /// Breadth-first hop distance from `start`, where two vertices are
    /// adjacent when they share a context. Unreachable vertices get
    /// `usize::MAX`.
    pub fn hop_distances(&self, start: usize) -> Vec<usize> {
        let mut dist = alloc::vec![usize::MAX; self.labels.len()];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &c in &self.incidence[v] {
                for &w in &self.contexts[c] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }
}

pub(crate) fn join<'a>(labels: impl IntoIterator<Item = &'a str>) -> String {
    let mut out = String::from("{");
    for (i, l) in labels.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        out.push_str(l);
    }
    out.push('}');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_malformed_input() {
        let bad_size = ContextHypergraph::from_contexts(3, &[vec!["x", "y"]]);
        assert!(matches!(bad_size, Err(Error::InvalidHypergraph(_))));
        let repeat = ContextHypergraph::from_contexts(3, &[vec!["x", "x", "y"]]);
        assert!(repeat.is_err());
        let duplicate = ContextHypergraph::from_contexts(3, &[vec!["x", "y", "z"], vec!["z", "y", "x"]]);
        assert!(duplicate.is_err());
        let orphan = ContextHypergraph::new(3, &["x", "y", "z", "w"], &[vec!["x", "y", "z"]]);
        assert!(orphan.is_err());
        let unknown = ContextHypergraph::new(3, &["x", "y"], &[vec!["x", "y", "z"]]);
        assert!(unknown.is_err());
    }

    #[test]
    fn deletion_drops_contexts_and_orphans() {
        let h = ContextHypergraph::from_contexts(
            3,
            &[vec!["x", "y", "z"], vec!["z", "u", "w"]],
        )
        .unwrap();
        let sub = h.without(&["u"]).unwrap();
        assert_eq!(sub.context_count(), 1);
        assert_eq!(sub.labels(), &["x", "y", "z"]);
        assert!(h.without(&["nope"]).is_err());
    }

    #[test]
    fn hop_distances_follow_shared_contexts() {
        let h = ContextHypergraph::from_contexts(
            3,
            &[vec!["x", "y", "z"], vec!["z", "u", "w"]],
        )
        .unwrap();
        let d = h.hop_distances(h.vertex("x").unwrap());
        assert_eq!(d[h.vertex("z").unwrap()], 1);
        assert_eq!(d[h.vertex("w").unwrap()], 2);
    }
}
