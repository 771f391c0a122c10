//! Line-oriented text formats. Blank lines and `#` comments are ignored
//! everywhere; parse errors carry 1-based line numbers.

pub mod hypergraph;
pub mod matrix;
pub mod netlist;

/// Non-empty, comment-stripped lines with their 1-based numbers.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    })
}
