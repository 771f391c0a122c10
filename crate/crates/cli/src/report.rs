//! Hypergraph analysis driven by a query, and its serializable report.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use indefinite_core::contextuality::{
    classify_gadget, enumerate_two_valued_states, is_unital, propagate, ContextHypergraph, GadgetClass,
    PartialAssignment, Propagation, Rule, Value,
};

use crate::error::CliResult;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Query {
    Propagate,
    Enumerate,
    Gadget { from: String, to: String },
    Unital,
}

impl Query {
    pub fn name(&self) -> &'static str {
        match self {
            Query::Propagate => "propagate",
            Query::Enumerate => "enumerate",
            Query::Gadget { .. } => "gadget",
            Query::Unital => "unital",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelledValue {
    pub label: String,
    pub value: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub label: String,
    pub value: u8,
    pub rule: String,
    pub context: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AnalysisResult {
    Fixpoint { definite: Vec<LabelledValue>, undefined: usize },
    Contradiction { context: Vec<String>, definite: Vec<LabelledValue> },
    /// Two-valued states consistent with the seeds; each lists the
    /// vertices valued 1.
    Enumeration { count: usize, states: Vec<Vec<String>> },
    Gadget { from: String, to: String, class: String },
    Unital { unital: bool, state_count: usize, never_one: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub subject: String,
    pub query: String,
    pub seeds: Vec<LabelledValue>,
    pub result: AnalysisResult,
    pub trace: Vec<TraceStep>,
    /// Wall-clock microseconds per phase.
    pub timings_us: BTreeMap<String, u64>,
}

fn bit(v: Value) -> Option<u8> {
    match v {
        Value::Zero => Some(0),
        Value::One => Some(1),
        Value::Undefined => None,
    }
}

fn definite(h: &ContextHypergraph, a: &PartialAssignment) -> Vec<LabelledValue> {
    a.values()
        .iter()
        .enumerate()
        .filter_map(|(v, &x)| bit(x).map(|value| LabelledValue { label: h.label(v).to_string(), value }))
        .collect()
}

fn context_labels(h: &ContextHypergraph, c: usize) -> Vec<String> {
    h.context_labels(c).into_iter().map(String::from).collect()
}

fn ones(h: &ContextHypergraph, a: &PartialAssignment) -> Vec<String> {
    a.vertices_with(Value::One).into_iter().map(|v| h.label(v).to_string()).collect()
}

pub fn analyze(
    subject: &str,
    h: &ContextHypergraph,
    seeds: &[(String, Value)],
    query: &Query,
) -> CliResult<AnalysisReport> {
    let mut timings_us = BTreeMap::new();
    let started = Instant::now();
    let pairs: Vec<(&str, Value)> = seeds.iter().map(|(l, v)| (l.as_str(), *v)).collect();
    let seed = PartialAssignment::from_labels(h, &pairs)?;
    let mut trace = Vec::new();
    let result = match query {
        Query::Propagate => {
            let outcome = propagate(h, &seed);
            trace = outcome
                .trace()
                .iter()
                .map(|d| TraceStep {
                    label: h.label(d.vertex).to_string(),
                    value: bit(d.value).unwrap_or(0),
                    rule: match d.rule {
                        Rule::Exclusivity => "exclusivity",
                        Rule::Completeness => "completeness",
                    }
                    .to_string(),
                    context: context_labels(h, d.context),
                })
                .collect();
            match &outcome {
                Propagation::Fixpoint { assignment, .. } => AnalysisResult::Fixpoint {
                    definite: definite(h, assignment),
                    undefined: h.vertex_count() - assignment.definite_count(),
                },
                Propagation::Contradiction { context, assignment, .. } => AnalysisResult::Contradiction {
                    context: context_labels(h, *context),
                    definite: definite(h, assignment),
                },
            }
        }
        Query::Enumerate => {
            let states: Vec<Vec<String>> = enumerate_two_valued_states(h)
                .iter()
                .filter(|s| seed.seed_order().iter().all(|&v| s.values()[v] == seed.values()[v]))
                .map(|s| ones(h, s))
                .collect();
            AnalysisResult::Enumeration { count: states.len(), states }
        }
        Query::Gadget { from, to } => {
            let class = match classify_gadget(h, from, to)? {
                GadgetClass::Tifs => "TIFS",
                GadgetClass::Tits => "TITS",
                GadgetClass::Both => "both",
                GadgetClass::Neither => "neither",
            };
            AnalysisResult::Gadget { from: from.clone(), to: to.clone(), class: class.to_string() }
        }
        Query::Unital => {
            let u = is_unital(h);
            let never_one = u
                .witnesses
                .iter()
                .enumerate()
                .filter(|(_, w)| w.is_none())
                .map(|(v, _)| h.label(v).to_string())
                .collect();
            AnalysisResult::Unital { unital: u.unital, state_count: u.states.len(), never_one }
        }
    };
    timings_us.insert(query.name().to_string(), started.elapsed().as_micros() as u64);
    Ok(AnalysisReport {
        subject: subject.to_string(),
        query: query.name().to_string(),
        seeds: seeds
            .iter()
            .map(|(l, v)| LabelledValue { label: l.clone(), value: bit(*v).unwrap_or(0) })
            .collect(),
        result,
        trace,
        timings_us,
    })
}

fn braces(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(","))
}

fn values(vs: &[LabelledValue]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| format!("{}:{}", v.label, v.value)).collect();
    format!("{{{}}}", parts.join(","))
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Human-readable summary; timings are left out so the text is
    /// reproducible.
    pub fn render(&self) -> String {
        let mut out = format!("subject: {}\nquery: {}\n", self.subject, self.query);
        if !self.seeds.is_empty() {
            out.push_str(&format!("seeds: {}\n", values(&self.seeds)));
        }
        match &self.result {
            AnalysisResult::Fixpoint { definite, undefined } => {
                out.push_str(&format!("fixpoint: {}\nundefined: {undefined}\n", values(definite)));
            }
            AnalysisResult::Contradiction { context, definite } => {
                out.push_str(&format!("contradiction at {}\n", braces(context)));
                out.push_str(&format!("definite: {}\n", values(definite)));
            }
            AnalysisResult::Enumeration { count, states } => {
                out.push_str(&format!("two-valued states: {count}\n"));
                for (k, s) in states.iter().enumerate() {
                    out.push_str(&format!("state {k}: ones {}\n", braces(s)));
                }
            }
            AnalysisResult::Gadget { from, to, class } => {
                out.push_str(&format!("gadget {from} -> {to}: {class}\n"));
            }
            AnalysisResult::Unital { unital, state_count, never_one } => {
                out.push_str(&format!("unital: {unital}\ntwo-valued states: {state_count}\n"));
                if !never_one.is_empty() {
                    out.push_str(&format!("never 1: {}\n", braces(never_one)));
                }
            }
        }
        for step in &self.trace {
            out.push_str(&format!(
                "  {}={} by {} in {}\n",
                step.label,
                step.value,
                step.rule,
                braces(&step.context)
            ));
        }
        out
    }
}
