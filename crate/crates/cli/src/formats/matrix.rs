//! One matrix row per line, entries separated by whitespace, each written
//! `re+imj` or `re-imj` (a bare real number is also accepted).

use indefinite_core::linalg::Matrix;
use indefinite_core::Complex64;

use super::content_lines;
use crate::error::{CliError, CliResult};

pub fn parse(text: &str, source_name: &str) -> CliResult<Matrix> {
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    let mut last_line = 1;
    for (line, body) in content_lines(text) {
        last_line = line;
        let row = body
            .split_whitespace()
            .map(|tok| {
                parse_entry(tok).ok_or_else(|| CliError::parse(source_name, line, format!("invalid entry `{tok}`")))
            })
            .collect::<CliResult<Vec<_>>>()?;
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(CliError::parse(
                    source_name,
                    line,
                    format!("row has {} entries, expected {}", row.len(), first.len()),
                ));
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(CliError::parse(source_name, last_line, "empty matrix"));
    }
    Matrix::from_rows(&rows).map_err(|_| CliError::parse(source_name, last_line, "matrix is not square"))
}

/// Parses `re+imj`, `re-imj`, or a bare real.
pub fn parse_entry(tok: &str) -> Option<Complex64> {
    let Some(body) = tok.strip_suffix('j') else {
        return finite(tok.parse().ok()?).map(|re| Complex64::new(re, 0.0));
    };
    // The imaginary part starts at the last sign that is not the leading
    // sign and not an exponent sign.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'))?;
    let re: f64 = body[..split].parse().ok()?;
    let im_text = &body[split..];
    let im: f64 = im_text.strip_prefix('+').unwrap_or(im_text).parse().ok()?;
    Some(Complex64::new(finite(re)?, finite(im)?))
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

pub fn format_entry(z: Complex64) -> String {
    if z.im.is_sign_negative() {
        format!("{}-{}j", z.re, -z.im)
    } else {
        format!("{}+{}j", z.re, z.im)
    }
}

pub fn serialize(m: &Matrix) -> String {
    let mut out = String::new();
    for r in 0..m.dim() {
        let row: Vec<String> = m.row(r).iter().map(|&z| format_entry(z)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn entry_forms() {
        assert_eq!(parse_entry("0.5+0.25j"), Some(Complex64::new(0.5, 0.25)));
        assert_eq!(parse_entry("-1e-3-2E+2j"), Some(Complex64::new(-1e-3, -200.0)));
        assert_eq!(parse_entry("1"), Some(Complex64::new(1.0, 0.0)));
        assert_eq!(parse_entry("-0.5j"), None);
        assert_eq!(parse_entry("abc"), None);
        assert_eq!(parse_entry("inf+0j"), None);
    }

    #[test]
    fn ragged_rows_are_rejected() {
        let err = parse("1+0j 0+0j\n0+0j\n", "m").unwrap_err();
        assert!(matches!(err, CliError::Parse { line: 2, .. }));
    }

    proptest! {
        #[test]
        fn entries_round_trip_bit_exactly(re in any::<f64>(), im in any::<f64>()) {
            prop_assume!(re.is_finite() && im.is_finite());
            let z = Complex64::new(re, im);
            let back = parse_entry(&format_entry(z)).unwrap();
            prop_assert_eq!(back.re.to_bits(), re.to_bits());
            prop_assert_eq!(back.im.to_bits(), im.to_bits());
        }
    }
}
