//! Constant-weight codes from translates of a code.
//!
//! For a code C ⊆ Z_q^n and any u, the binary-valued words of weight w in
//! u + C form a binary constant-weight code whose minimum distance is at
//! least the even rounding of d(C). Appending one coordinate (1 for weight
//! w-1, 0 for weight w) to the words of weights w-1 and w gives a
//! constant-weight code of length n+1 with the same distance guarantee.
//! This module computes per-translate weight histograms, searches for the
//! translate maximizing either count, computes the exact averaging lower
//! bounds, and extracts the resulting codes.

mod bound;
mod extract;
mod sweep;

use std::fmt;
use std::str::FromStr;

use crate::codebook::Code;
use crate::error::{Error, Result};
use crate::words::Word;

pub use bound::{
    avg_bound, avg_bound_extended, binomial, ceil_div, BoundKind, BoundResult, BOUND_CSV_HEADER,
};
pub use extract::{extract, extract_extended, extract_fixed};
pub use sweep::{
    sweep, Strategy, SweepConfig, SweepEntry, SweepReport, DEFAULT_MAX_WORK, SWEEP_CSV_HEADER,
};

/// Distance guaranteed for a binary constant-weight code cut from a code of
/// minimum distance `d`: 2⌊(d+1)/2⌋, since equal-weight binary words are at
/// even distance.
pub fn target_distance(d: usize) -> usize {
    2 * d.div_ceil(2)
}

/// How a translate is scored at target weight w.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    /// counts[w]; yields a length-n code.
    Fixed,
    /// counts[w-1] + counts[w]; yields a length-(n+1) code.
    Extend,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Fixed => "fixed",
            Mode::Extend => "extend",
        }
    }

    /// Length of the constant-weight code built from a length-n code.
    pub fn target_length(self, n: usize) -> usize {
        match self {
            Mode::Fixed => n,
            Mode::Extend => n + 1,
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fixed" => Ok(Mode::Fixed),
            "extend" => Ok(Mode::Extend),
            _ => Err(Error::Parameter(format!(
                "unknown mode {s:?} (fixed | extend)"
            ))),
        }
    }
}

/// Checks 0 < w < n for every requested weight.
pub fn check_weights(weights: &[usize], n: usize) -> Result<()> {
    for &w in weights {
        if w == 0 || w >= n {
            return Err(Error::WeightRange {
                w,
                lo: 1,
                hi: n.saturating_sub(1),
                rule: "the coset construction needs 0 < w < n",
            });
        }
    }
    Ok(())
}

/// Number of binary-valued words of each weight in one translate u + C.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetHistogram {
    pub representative: Word,
    pub counts: Vec<u64>,
}

impl CosetHistogram {
    pub fn count(&self, w: usize) -> u64 {
        self.counts.get(w).copied().unwrap_or(0)
    }

    pub fn score(&self, mode: Mode, w: usize) -> u64 {
        match mode {
            Mode::Fixed => self.count(w),
            Mode::Extend => self.count(w) + if w > 0 { self.count(w - 1) } else { 0 },
        }
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Histogram of u + C by weight, in one pass over the codewords.
pub fn coset_histogram(code: &Code, u: &Word) -> Result<CosetHistogram> {
    let spec = code.spec();
    if u.len() != spec.n || u.q() != spec.q {
        return Err(Error::Mismatch {
            n1: spec.n,
            q1: spec.q,
            n2: u.len(),
            q2: u.q(),
        });
    }
    let mut counts = vec![0u64; spec.n + 1];
    match code {
        Code::Linear(c) => {
            let shift = u.bits().expect("binary word");
            for x in c.codewords_packed() {
                counts[(x ^ shift).count_ones() as usize] += 1;
            }
        }
        Code::Explicit(c) => {
            for x in c.words() {
                let s = u.add(x)?;
                if s.is_binary_valued() {
                    counts[s.weight()] += 1;
                }
            }
        }
    }
    Ok(CosetHistogram {
        representative: u.clone(),
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codebook::{ExplicitCode, Family, LinearCode};

    fn w2(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn even_rounding() {
        assert_eq!(target_distance(7), 8);
        assert_eq!(target_distance(8), 8);
        assert_eq!(target_distance(5), 6);
        for d in 1..100 {
            let t = target_distance(d);
            assert!(t >= d && t.is_multiple_of(2) && t - d <= 1);
        }
    }

    #[test]
    fn even_weight_code_histogram() {
        let c: Code = LinearCode::from_generator(&[w2("011"), w2("101")], Family::Generator, None)
            .unwrap()
            .into();
        let h = coset_histogram(&c, &w2("100")).unwrap();
        assert_eq!(h.counts, vec![0, 3, 0, 1]);
        assert_eq!(h.score(Mode::Extend, 1), 3);
        assert_eq!(h.score(Mode::Extend, 2), 3);
    }

    #[test]
    fn zero_translate_is_weight_distribution() {
        let c = crate::codebook::bch_code(4, 5).unwrap();
        let dist = c.weight_distribution();
        let h = coset_histogram(&c.clone().into(), &Word::zero(15, 2).unwrap()).unwrap();
        assert_eq!(h.counts, dist);
    }

    #[test]
    fn qary_translate_counts_only_binary_words() {
        let words = vec![Word::parse("00", 4).unwrap(), Word::parse("22", 4).unwrap()];
        let c: Code = ExplicitCode::new(2, 4, words, 2, Family::Explicit)
            .unwrap()
            .into();
        let h = coset_histogram(&c, &Word::parse("01", 4).unwrap()).unwrap();
        assert_eq!(h.counts, vec![0, 1, 0]);
        assert!(coset_histogram(&c, &w2("01")).is_err());
    }

    #[test]
    fn weight_bounds() {
        assert!(check_weights(&[1, 5], 6).is_ok());
        assert!(check_weights(&[0], 6).is_err());
        assert!(check_weights(&[6], 6).is_err());
        assert_eq!("extend".parse::<Mode>().unwrap(), Mode::Extend);
        assert!("both".parse::<Mode>().is_err());
    }
}
