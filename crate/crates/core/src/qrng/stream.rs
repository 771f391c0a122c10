use alloc::string::String;
use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use super::{outcome_distribution, MeasurementSetup};
use crate::linalg::unit_f64;
use crate::{Error, Result};

/// Name recorded in stream metadata for the pseudo-random source.
pub const GENERATOR: &str = "ChaCha20";
/// Symbols per independently seeded segment.
pub const SEGMENT_LEN: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Alphabet {
    Binary,
    Ternary,
    /// Outcome labels `0..n` for `n > 3`.
    Wide(usize),
}

impl Alphabet {
    pub fn for_size(n: usize) -> Self {
        match n {
            0..=2 => Alphabet::Binary,
            3 => Alphabet::Ternary,
            _ => Alphabet::Wide(n),
        }
    }

    pub fn size(self) -> usize {
        match self {
            Alphabet::Binary => 2,
            Alphabet::Ternary => 3,
            Alphabet::Wide(n) => n,
        }
    }
}

/// Provenance of a stream.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreamMeta {
    pub seed: u64,
    pub generator: String,
    pub count: usize,
    pub setup: String,
    /// Draws that landed on an outcome outside the binary labeling; such
    /// draws are dropped, so `count` excludes them.
    pub dust_events: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolStream {
    pub alphabet: Alphabet,
    pub symbols: Vec<u8>,
    pub meta: StreamMeta,
}

impl SymbolStream {
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Occurrences of each symbol.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = alloc::vec![0usize; self.alphabet.size()];
        for &s in &self.symbols {
            c[s as usize] += 1;
        }
        c
    }
}

fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of segment `index` of a stream seeded with `seed`.
pub fn segment_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

/// Draws `len` outcomes for segment `index` by inverse CDF. Outcomes with
/// probability exactly zero are never drawn.
pub fn sample_segment(probs: &[f64], seed: u64, index: u64, len: usize) -> Vec<u8> {
    let mut cdf = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for &p in probs {
        acc += p;
        cdf.push(acc);
    }
    let last_live = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0) as u8;
    let mut rng = ChaCha20Rng::seed_from_u64(segment_seed(seed, index));
    (0..len)
        .map(|_| {
            let u = unit_f64(&mut rng) * acc;
            probs
                .iter()
                .zip(&cdf)
                .position(|(&p, &c)| p > 0.0 && u < c)
                .map_or(last_live, |i| i as u8)
        })
        .collect()
}

/// `count` i.i.d. draws from `probs`, segment by segment.
pub fn sample_probabilities(probs: &[f64], count: usize, seed: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(count);
    let mut index = 0u64;
    while out.len() < count {
        let len = SEGMENT_LEN.min(count - out.len());
        out.extend(sample_segment(probs, seed, index, len));
        index += 1;
    }
    out
}

/// I.i.d. outcomes of `setup` drawn from its Born-rule distribution.
pub fn sample(setup: &MeasurementSetup, count: usize, seed: u64) -> SymbolStream {
    let probs = outcome_distribution(setup);
    SymbolStream {
        alphabet: Alphabet::for_size(probs.len()),
        symbols: sample_probabilities(&probs, count, seed),
        meta: StreamMeta {
            seed,
            generator: GENERATOR.into(),
            count,
            setup: String::from("measurement"),
            dust_events: 0,
        },
    }
}

/// Maps ternary outcomes to bits: `0 -> 1`, `1 -> 0`, `2 -> 0`.
pub fn apply_morphism(s: &SymbolStream) -> Result<SymbolStream> {
    if s.alphabet != Alphabet::Ternary {
        return Err(Error::Alphabet("morphism needs a ternary stream"));
    }
    let symbols = s
        .symbols
        .iter()
        .map(|&x| match x {
            0 => Ok(1),
            1 | 2 => Ok(0),
            _ => Err(Error::Alphabet("symbol outside the ternary alphabet")),
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(SymbolStream { alphabet: Alphabet::Binary, symbols, meta: s.meta.clone() })
}
