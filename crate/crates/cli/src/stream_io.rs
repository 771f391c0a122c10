//! Stream encodings and the JSON metadata sidecar.
//!
//! ASCII writes one character per symbol (`0-9`, then `a-z` for wide
//! alphabets). Packed writes binary streams eight bits per byte, most
//! significant bit first; the final byte is zero-padded and the true
//! length comes from the sidecar.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum StreamFormat {
    Ascii,
    Packed,
}

/// Sidecar record written next to every generated stream.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StreamMetadata {
    pub seed: u64,
    pub preset: String,
    pub count: usize,
    pub mode: String,
    pub format: StreamFormat,
    pub alphabet: usize,
    pub generator: String,
    /// Analytic law of the emitted symbols.
    pub distribution: Vec<f64>,
    pub dust_events: usize,
}

impl StreamMetadata {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("metadata serializes")
    }

    pub fn from_json(text: &str, source_name: &str) -> CliResult<Self> {
        serde_json::from_str(text).map_err(|e| CliError::parse(source_name, e.line(), e.to_string()))
    }
}

/// `<stream>.meta.json`.
pub fn sidecar_path(stream: &Path) -> PathBuf {
    let mut name = stream.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

pub fn encode(symbols: &[u8], alphabet: usize, format: StreamFormat) -> CliResult<Vec<u8>> {
    match format {
        StreamFormat::Ascii => {
            if alphabet > DIGITS.len() {
                return Err(CliError::Usage(format!("ASCII streams support at most {} symbols", DIGITS.len())));
            }
            Ok(symbols.iter().map(|&s| DIGITS[s as usize]).collect())
        }
        StreamFormat::Packed => {
            if alphabet != 2 {
                return Err(CliError::Usage("packed format requires a binary stream".into()));
            }
            Ok(symbols
                .chunks(8)
                .map(|chunk| chunk.iter().enumerate().fold(0u8, |b, (k, &bit)| b | (bit << (7 - k))))
                .collect())
        }
    }
}

/// Decodes a stream. Trailing line breaks in ASCII input are ignored.
/// For packed input `count` bounds the number of bits read (all bits when
/// `None`).
pub fn decode(
    bytes: &[u8],
    format: StreamFormat,
    count: Option<usize>,
    source_name: &str,
) -> CliResult<Vec<u8>> {
    match format {
        StreamFormat::Ascii => {
            let mut end = bytes.len();
            while end > 0 && matches!(bytes[end - 1], b'\n' | b'\r') {
                end -= 1;
            }
            let symbols = bytes[..end]
                .iter()
                .enumerate()
                .map(|(k, b)| {
                    DIGITS.iter().position(|d| d == b).map(|s| s as u8).ok_or_else(|| {
                        CliError::parse(source_name, 1, format!("invalid symbol byte 0x{b:02x} at offset {k}"))
                    })
                })
                .collect::<CliResult<Vec<u8>>>()?;
            if let Some(n) = count {
                if n != symbols.len() {
                    return Err(CliError::parse(
                        source_name,
                        1,
                        format!("stream holds {} symbols, metadata declares {n}", symbols.len()),
                    ));
                }
            }
            Ok(symbols)
        }
        StreamFormat::Packed => {
            let available = bytes.len() * 8;
            let n = count.unwrap_or(available);
            if n > available || available - n >= 8 {
                return Err(CliError::parse(
                    source_name,
                    1,
                    format!("{} packed bytes cannot hold exactly {n} bits", bytes.len()),
                ));
            }
            Ok((0..n).map(|k| (bytes[k / 8] >> (7 - k % 8)) & 1).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn packed_is_big_endian_within_a_byte() {
        let bits = [1, 0, 0, 0, 0, 0, 0, 1, 1];
        assert_eq!(encode(&bits, 2, StreamFormat::Packed).unwrap(), vec![0x81, 0x80]);
        assert!(encode(&[0, 2], 3, StreamFormat::Packed).is_err());
    }

    #[test]
    fn ascii_rejects_foreign_bytes() {
        assert!(decode(b"01?", StreamFormat::Ascii, None, "s").is_err());
        assert_eq!(decode(b"0121\n", StreamFormat::Ascii, None, "s").unwrap(), vec![0, 1, 2, 1]);
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar_path(Path::new("out/bits.bin")), PathBuf::from("out/bits.bin.meta.json"));
    }

    #[test]
    fn metadata_round_trip() {
        let meta = StreamMetadata {
            seed: u64::MAX,
            preset: "fig5".into(),
            count: 3,
            mode: "merge".into(),
            format: StreamFormat::Packed,
            alphabet: 2,
            generator: "ChaCha20".into(),
            distribution: vec![0.1 + 0.2, 1.0 - (0.1 + 0.2)],
            dust_events: 0,
        };
        assert_eq!(StreamMetadata::from_json(&meta.to_json(), "m").unwrap(), meta);
    }

    proptest! {
        #[test]
        fn packed_round_trip(bits in proptest::collection::vec(0u8..2, 0..200)) {
            let bytes = encode(&bits, 2, StreamFormat::Packed).unwrap();
            prop_assert_eq!(decode(&bytes, StreamFormat::Packed, Some(bits.len()), "p").unwrap(), bits);
        }

        #[test]
        fn ascii_round_trip(symbols in proptest::collection::vec(0u8..7, 0..200)) {
            let bytes = encode(&symbols, 7, StreamFormat::Ascii).unwrap();
            prop_assert_eq!(decode(&bytes, StreamFormat::Ascii, None, "a").unwrap(), symbols);
        }
    }
}
