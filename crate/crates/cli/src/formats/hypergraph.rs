//! `rank n`, then `vertex <label>` and `context <label> ... <label>` lines.

use std::fmt::Write;

use indefinite_core::contextuality::ContextHypergraph;

use super::content_lines;
use crate::error::{CliError, CliResult};

pub fn parse(text: &str, source_name: &str) -> CliResult<ContextHypergraph> {
    let mut rank: Option<usize> = None;
    let mut vertices: Vec<String> = Vec::new();
    let mut contexts: Vec<Vec<String>> = Vec::new();
    let mut last_line = 0;
    for (line, body) in content_lines(text) {
        last_line = line;
        let mut words = body.split_whitespace();
        let keyword = words.next().unwrap_or_default();
        let rest: Vec<String> = words.map(String::from).collect();
        match keyword {
            "rank" => {
                if rank.is_some() {
                    return Err(CliError::parse(source_name, line, "duplicate rank header"));
                }
                let [n] = rest.as_slice() else {
                    return Err(CliError::parse(source_name, line, "expected `rank <n>`"));
                };
                let n: usize = n
                    .parse()
                    .map_err(|_| CliError::parse(source_name, line, format!("invalid rank `{n}`")))?;
                rank = Some(n);
            }
            "vertex" => {
                let [label] = rest.as_slice() else {
                    return Err(CliError::parse(source_name, line, "expected `vertex <label>`"));
                };
                if vertices.contains(label) {
                    return Err(CliError::parse(source_name, line, format!("duplicate vertex `{label}`")));
                }
                vertices.push(label.clone());
            }
            "context" => {
                let Some(n) = rank else {
                    return Err(CliError::parse(source_name, line, "context before rank header"));
                };
                if rest.len() != n {
                    return Err(CliError::parse(
                        source_name,
                        line,
                        format!("context has {} vertices, rank is {n}", rest.len()),
                    ));
                }
                if let Some(unknown) = rest.iter().find(|l| !vertices.contains(l)) {
                    return Err(CliError::parse(source_name, line, format!("undeclared vertex `{unknown}`")));
                }
                contexts.push(rest);
            }
            other => {
                return Err(CliError::parse(source_name, line, format!("unknown keyword `{other}`")));
            }
        }
    }
    let rank = rank.ok_or_else(|| CliError::parse(source_name, last_line.max(1), "missing rank header"))?;
    ContextHypergraph::new(rank, &vertices, &contexts)
        .map_err(|e| CliError::parse(source_name, last_line.max(1), e.to_string()))
}

pub fn serialize(h: &ContextHypergraph) -> String {
    let mut out = format!("rank {}\n", h.rank());
    for label in h.labels() {
        writeln!(out, "vertex {label}").unwrap();
    }
    for c in 0..h.context_count() {
        writeln!(out, "context {}", h.context_labels(c).join(" ")).unwrap();
    }
    out
}
