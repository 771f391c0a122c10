//! `dim n`, then one element per line in traversal order:
//! `bs i j omega phi`, `ps i phi`, or `mr i phi` (radians).
//!
//! Angles are written with Rust's shortest round-trip float formatting, so
//! a serialized network parses back bit for bit.

use std::fmt::Write;

use indefinite_core::optics::{BeamSplitterNetwork, Element, MirrorElement, PhaseElement, SplitterElement};

use super::content_lines;
use crate::error::{CliError, CliResult};

pub fn parse(text: &str, source_name: &str) -> CliResult<BeamSplitterNetwork> {
    let mut dim: Option<usize> = None;
    let mut elements = Vec::new();
    let mut last_line = 1;
    for (line, body) in content_lines(text) {
        last_line = line;
        let words: Vec<&str> = body.split_whitespace().collect();
        let err = |m: String| CliError::parse(source_name, line, m);
        let index = |s: &str| s.parse::<usize>().map_err(|_| err(format!("invalid port `{s}`")));
        let angle = |s: &str| match s.parse::<f64>() {
            Ok(a) if a.is_finite() => Ok(a),
            _ => Err(err(format!("invalid angle `{s}`"))),
        };
        let element = match words.as_slice() {
            ["dim", n] => {
                if dim.is_some() {
                    return Err(err("duplicate dim header".into()));
                }
                dim = Some(n.parse().map_err(|_| err(format!("invalid dimension `{n}`")))?);
                continue;
            }
            ["bs", i, j, omega, phi] => {
                Element::Splitter(SplitterElement { i: index(i)?, j: index(j)?, omega: angle(omega)?, phi: angle(phi)? })
            }
            ["ps", i, phi] => Element::Phase(PhaseElement { port: index(i)?, phase: angle(phi)? }),
            ["mr", i, phi] => Element::Mirror(MirrorElement { port: index(i)?, phi: angle(phi)? }),
            _ => return Err(err(format!("unrecognized line `{body}`"))),
        };
        let Some(n) = dim else {
            return Err(err("element before dim header".into()));
        };
        let ok = match element {
            Element::Splitter(s) => s.i < s.j && s.j < n,
            Element::Phase(p) => p.port < n,
            Element::Mirror(m) => m.port < n,
        };
        if !ok {
            return Err(err("port out of range or splitter ports not increasing".into()));
        }
        elements.push(element);
    }
    let n = dim.ok_or_else(|| CliError::parse(source_name, last_line, "missing dim header"))?;
    BeamSplitterNetwork::new(n, elements).map_err(|e| CliError::parse(source_name, last_line, e.to_string()))
}

pub fn serialize(net: &BeamSplitterNetwork) -> String {
    let mut out = format!("dim {}\n", net.dim());
    for e in net.elements() {
        match e {
            Element::Splitter(s) => writeln!(out, "bs {} {} {} {}", s.i, s.j, s.omega, s.phi),
            Element::Phase(p) => writeln!(out, "ps {} {}", p.port, p.phase),
            Element::Mirror(m) => writeln!(out, "mr {} {}", m.port, m.phi),
        }
        .unwrap();
    }
    out
}
