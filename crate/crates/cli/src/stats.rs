//! Sanity statistics on symbol streams: counts, monobit, runs, chi-square.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ChiSquared, ContinuousCDF};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiSquare {
    pub expected: Vec<f64>,
    pub statistic: f64,
    pub degrees_of_freedom: usize,
    pub p_value: f64,
    /// Observations of symbols whose expected probability is zero. Those
    /// cells are left out of the statistic.
    pub impossible_observations: usize,
}

/// Statistics recomputable from the stream alone (plus the expected law
/// for chi-square). Undefined z-scores are `None`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub total: usize,
    pub counts: Vec<usize>,
    pub monobit_z: Option<f64>,
    pub runs_z: Option<f64>,
    pub chi_square: Option<ChiSquare>,
}

/// `(ones - n/2) / sqrt(n/4)`; `None` for an empty stream.
pub fn monobit_z(bits: &[u8]) -> Option<f64> {
    if bits.is_empty() {
        return None;
    }
    let n = bits.len() as f64;
    let ones = bits.iter().filter(|&&b| b == 1).count() as f64;
    Some((ones - n / 2.0) / (n / 4.0).sqrt())
}

/// Wald-Wolfowitz runs test z-score; `None` unless both symbols occur
/// and the variance is positive.
pub fn runs_z(bits: &[u8]) -> Option<f64> {
    let n = bits.len();
    let n1 = bits.iter().filter(|&&b| b == 1).count();
    let n0 = n - n1;
    if n0 == 0 || n1 == 0 {
        return None;
    }
    let runs = 1 + bits.windows(2).filter(|w| w[0] != w[1]).count();
    let (n, n0, n1) = (n as f64, n0 as f64, n1 as f64);
    let mu = 2.0 * n0 * n1 / n + 1.0;
    let var = (mu - 1.0) * (mu - 2.0) / (n - 1.0);
    (var > 0.0).then(|| (runs as f64 - mu) / var.sqrt())
}

/// Pearson chi-square of `counts` against `expected`. `None` when the
/// stream is empty, lengths differ, or fewer than two cells have positive
/// probability.
pub fn chi_square(counts: &[usize], expected: &[f64]) -> Option<ChiSquare> {
    let total: usize = counts.iter().sum();
    if total == 0 || counts.len() != expected.len() {
        return None;
    }
    let mut statistic = 0.0;
    let mut cells = 0;
    let mut impossible = 0;
    for (&c, &p) in counts.iter().zip(expected) {
        if p > 0.0 {
            let e = p * total as f64;
            statistic += (c as f64 - e).powi(2) / e;
            cells += 1;
        } else {
            impossible += c;
        }
    }
    if cells < 2 {
        return None;
    }
    let dof = cells - 1;
    let p_value = ChiSquared::new(dof as f64).ok()?.sf(statistic);
    Some(ChiSquare {
        expected: expected.to_vec(),
        statistic,
        degrees_of_freedom: dof,
        p_value,
        impossible_observations: impossible,
    })
}

/// Full report. Monobit and runs are computed for binary streams only.
pub fn analyze(symbols: &[u8], alphabet: usize, expected: Option<&[f64]>) -> StatsReport {
    let mut counts = vec![0usize; alphabet];
    for &s in symbols {
        counts[s as usize] += 1;
    }
    let binary = alphabet == 2;
    StatsReport {
        total: symbols.len(),
        monobit_z: if binary { monobit_z(symbols) } else { None },
        runs_z: if binary { runs_z(symbols) } else { None },
        chi_square: expected.and_then(|e| chi_square(&counts, e)),
        counts,
    }
}

fn show(z: Option<f64>) -> String {
    z.map_or_else(|| "undefined".to_string(), |z| format!("{z:.6}"))
}

impl StatsReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render(&self) -> String {
        let mut out = format!("total: {}\n", self.total);
        for (s, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("count[{s}]: {c}\n"));
        }
        out.push_str(&format!("monobit z: {}\n", show(self.monobit_z)));
        out.push_str(&format!("runs z: {}\n", show(self.runs_z)));
        match &self.chi_square {
            Some(c) => {
                out.push_str(&format!(
                    "chi-square: {:.6} (dof {}, p = {:.6})\n",
                    c.statistic, c.degrees_of_freedom, c.p_value
                ));
                if c.impossible_observations > 0 {
                    out.push_str(&format!("impossible observations: {}\n", c.impossible_observations));
                }
            }
            None => out.push_str("chi-square: undefined\n"),
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn all_zeros_of_length_100() {
        let bits = vec![0u8; 100];
        assert_eq!(monobit_z(&bits), Some(-10.0));
        assert_eq!(runs_z(&bits), None);
    }

    #[test]
    fn empty_stream_is_flagged() {
        let r = analyze(&[], 2, Some(&[0.5, 0.5]));
        assert_eq!(r.counts, vec![0, 0]);
        assert_eq!((r.monobit_z, r.runs_z, r.chi_square.clone()), (None, None, None));
        assert!(r.render().contains("monobit z: undefined"));
    }

    #[test]
    fn alternating_bits_have_too_many_runs() {
        let bits: Vec<u8> = (0..1000).map(|k| (k % 2) as u8).collect();
        assert_eq!(monobit_z(&bits), Some(0.0));
        assert!(runs_z(&bits).unwrap() > 30.0);
    }

    #[test]
    fn runs_against_hand_count() {
        // 0011101: n0 = 3, n1 = 4, runs = 4, mu = 31/7.
        let bits = [0, 0, 1, 1, 1, 0, 1];
        let mu = 2.0 * 3.0 * 4.0 / 7.0 + 1.0;
        let var = (mu - 1.0) * (mu - 2.0) / 6.0;
        assert!((runs_z(&bits).unwrap() - (4.0 - mu) / f64::sqrt(var)).abs() < 1e-15);
    }

    #[test]
    fn chi_square_known_value() {
        // Statistic 4 on one degree of freedom: p = erfc(sqrt 2).
        let c = chi_square(&[60, 40], &[0.5, 0.5]).unwrap();
        assert!((c.statistic - 4.0).abs() < 1e-12);
        assert!((c.p_value - 0.045_500_263_896_358_4).abs() < 1e-9);
        let z = chi_square(&[50, 50, 3], &[0.5, 0.5, 0.0]).unwrap();
        assert_eq!((z.degrees_of_freedom, z.impossible_observations), (1, 3));
    }

    #[test]
    fn report_json_round_trip() {
        let r = analyze(&[0, 1, 1, 0, 1], 2, Some(&[0.3, 0.7]));
        let back: StatsReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
    }

    proptest! {
        #[test]
        fn counts_sum_to_total(bits in proptest::collection::vec(0u8..3, 0..300)) {
            let r = analyze(&bits, 3, None);
            prop_assert_eq!(r.counts.iter().sum::<usize>(), r.total);
        }
    }
}
