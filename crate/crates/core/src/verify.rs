//! Independent checks of claimed constant-weight codes. The pairwise scan
//! here is the reference for minimum distance; it shares nothing with the
//! coset machinery that produced the code.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::codebook::ExplicitCode;
use crate::error::{Error, Result};
use crate::words::Word;

/// Largest code (in words) whose pairs are scanned by default.
pub const DEFAULT_PAIR_BUDGET: usize = 100_000;

pub const CLAIM_CSV_HEADER: &str =
    "n,d,w,size,measured_n,measured_min_distance,measured_size,measured_weights,verdict";

/// Every word of weight exactly `w`? Returns the first offender otherwise.
pub fn check_constant_weight(code: &ExplicitCode, w: usize) -> (bool, Option<Word>) {
    match code.words().iter().find(|x| x.weight() != w) {
        Some(bad) => (false, Some(bad.clone())),
        None => (true, None),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct PairScan {
    min: Option<usize>,
    all_even: bool,
}

fn scan_pairs(words: &[Word]) -> Result<PairScan> {
    // Packed fast path for binary words.
    if let Some(bits) = words
        .iter()
        .map(|w| w.bits())
        .collect::<Option<Vec<u128>>>()
    {
        let (min, all_even) = (0..bits.len())
            .into_par_iter()
            .map(|i| {
                bits[i + 1..]
                    .iter()
                    .fold((usize::MAX, true), |(m, even), &b| {
                        let d = (bits[i] ^ b).count_ones() as usize;
                        (m.min(d), even && d.is_multiple_of(2))
                    })
            })
            .reduce(|| (usize::MAX, true), |a, b| (a.0.min(b.0), a.1 && b.1));
        return Ok(PairScan {
            min: (min != usize::MAX).then_some(min),
            all_even,
        });
    }
    let mut min = None::<usize>;
    let mut all_even = true;
    for (i, a) in words.iter().enumerate() {
        for b in &words[i + 1..] {
            let d = a.distance(b)?;
            min = Some(min.map_or(d, |m| m.min(d)));
            all_even &= d % 2 == 0;
        }
    }
    Ok(PairScan { min, all_even })
}

/// Exact minimum distance over all unordered pairs; `None` for fewer than
/// two words. Codes with more than `max_words` words are refused.
pub fn min_distance_pairwise(code: &ExplicitCode, max_words: usize) -> Result<Option<usize>> {
    if code.len() > max_words {
        let pairs = code.len() as u128 * (code.len() as u128 - 1) / 2;
        let limit = max_words as u128 * (max_words as u128).saturating_sub(1) / 2;
        return Err(Error::Budget { work: pairs, limit });
    }
    Ok(scan_pairs(code.words())?.min)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted(String),
    VacuousEmpty,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Verified => write!(f, "verified"),
            Verdict::Refuted(reason) => write!(f, "refuted({reason})"),
            Verdict::VacuousEmpty => write!(f, "vacuous-empty"),
        }
    }
}

/// Declared versus measured parameters of one code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimCheck {
    pub n: usize,
    pub d: usize,
    pub w: usize,
    pub size: usize,
    pub measured_n: usize,
    pub measured_weights: BTreeSet<usize>,
    pub measured_min_distance: Option<usize>,
    pub measured_size: usize,
    pub verdict: Verdict,
}

impl ClaimCheck {
    pub fn is_verified(&self) -> bool {
        matches!(self.verdict, Verdict::Verified | Verdict::VacuousEmpty)
    }

    pub fn csv_row(&self) -> String {
        let weights: Vec<String> = self
            .measured_weights
            .iter()
            .map(|w| w.to_string())
            .collect();
        let dist = self
            .measured_min_distance
            .map_or_else(|| "-".to_string(), |d| d.to_string());
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.n,
            self.d,
            self.w,
            self.size,
            self.measured_n,
            dist,
            self.measured_size,
            weights.join(";"),
            self.verdict
        )
    }
}

/// Checks that `code` is an (n, d, w) constant-weight code of exactly
/// `size` words, using the default pair budget.
pub fn verify_claim(code: &ExplicitCode, n: usize, d: usize, w: usize, size: usize) -> ClaimCheck {
    verify_claim_with_budget(code, n, d, w, size, DEFAULT_PAIR_BUDGET)
}

pub fn verify_claim_with_budget(
    code: &ExplicitCode,
    n: usize,
    d: usize,
    w: usize,
    size: usize,
    max_words: usize,
) -> ClaimCheck {
    let words = code.words();
    let measured_weights: BTreeSet<usize> = words.iter().map(|x| x.weight()).collect();
    let mut problems = Vec::new();

    let measured_n = code.spec().n;
    if measured_n != n || words.iter().any(|x| x.len() != n) {
        problems.push(format!("length {measured_n} != {n}"));
    }
    if words.iter().any(|x| !x.is_binary_valued()) {
        problems.push("non-binary symbol".to_string());
    }
    if let (false, Some(bad)) = check_constant_weight(code, w) {
        problems.push(format!("word {bad} has weight {} != {w}", bad.weight()));
    }
    let mut sorted: Vec<&Word> = words.iter().collect();
    sorted.sort_by(|a, b| a.colex_cmp(b));
    if sorted.windows(2).any(|p| p[0] == p[1]) {
        problems.push("duplicate codewords".to_string());
    }
    if words.len() != size {
        problems.push(format!("size {} != {size}", words.len()));
    }

    let mut measured_min_distance = None;
    if words.len() > max_words {
        problems.push(format!(
            "pair budget exceeded ({} > {max_words} words)",
            words.len()
        ));
    } else {
        match scan_pairs(words) {
            Ok(scan) => {
                measured_min_distance = scan.min;
                if let Some(m) = scan.min {
                    if m < d {
                        problems.push(format!("distance {m} < {d}"));
                    }
                }
                if !scan.all_even && measured_weights.len() == 1 {
                    problems.push("odd distance between equal-weight words".to_string());
                }
            }
            Err(e) => problems.push(e.to_string()),
        }
    }

    let verdict = if !problems.is_empty() {
        Verdict::Refuted(problems.join("; "))
    } else if words.is_empty() {
        Verdict::VacuousEmpty
    } else {
        Verdict::Verified
    };
    ClaimCheck {
        n,
        d,
        w,
        size,
        measured_n,
        measured_weights,
        measured_min_distance,
        measured_size: words.len(),
        verdict,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codebook::{bch_code, reed_muller_1, Family};

    fn code(words: &[&str]) -> ExplicitCode {
        let n = words.first().map_or(4, |w| w.len());
        let ws = words.iter().map(|w| Word::parse(w, 2).unwrap()).collect();
        ExplicitCode::new(n, 2, ws, 1, Family::Explicit).unwrap()
    }

    #[test]
    fn constant_weight() {
        assert_eq!(
            check_constant_weight(&code(&["0011", "1100"]), 2),
            (true, None)
        );
        let (ok, bad) = check_constant_weight(&code(&["0011", "1110"]), 2);
        assert!(!ok);
        assert_eq!(bad.unwrap().to_string(), "1110");
        assert_eq!(check_constant_weight(&code(&[]), 3), (true, None));
    }

    #[test]
    fn pairwise_minimum() {
        assert_eq!(
            min_distance_pairwise(&code(&["1100", "0011"]), 10).unwrap(),
            Some(4)
        );
        assert_eq!(min_distance_pairwise(&code(&["1100"]), 10).unwrap(), None);
        assert!(matches!(
            min_distance_pairwise(&code(&["1100", "0011", "1010"]), 2),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn pairwise_matches_min_weight_on_linear_codes() {
        for c in [
            bch_code(5, 11).unwrap(),
            bch_code(4, 5).unwrap(),
            reed_muller_1(5).unwrap(),
        ] {
            let explicit = c.to_explicit().unwrap();
            assert_eq!(
                min_distance_pairwise(&explicit, DEFAULT_PAIR_BUDGET).unwrap(),
                c.min_weight().unwrap()
            );
        }
    }

    #[test]
    fn claims() {
        let c = code(&["0011", "1100"]);
        assert_eq!(verify_claim(&c, 4, 4, 2, 2).verdict, Verdict::Verified);
        assert!(
            matches!(verify_claim(&c, 4, 6, 2, 2).verdict, Verdict::Refuted(r) if r.contains("distance"))
        );
        assert!(
            matches!(verify_claim(&c, 4, 4, 2, 3).verdict, Verdict::Refuted(r) if r.contains("size"))
        );
        assert!(matches!(
            verify_claim(&c, 5, 4, 2, 2).verdict,
            Verdict::Refuted(_)
        ));
        assert!(
            matches!(verify_claim(&c, 4, 4, 1, 2).verdict, Verdict::Refuted(r) if r.contains("weight"))
        );
        let empty = code(&[]);
        let check = verify_claim(&empty, 4, 4, 2, 0);
        assert_eq!(check.verdict, Verdict::VacuousEmpty);
        assert!(check.is_verified());
        assert_eq!(
            verify_claim(&c, 4, 4, 2, 2).csv_row(),
            "4,4,2,2,4,4,2,2,verified"
        );
    }

    #[test]
    fn qary_words_are_refuted() {
        let ws = vec![
            Word::parse("0110", 3).unwrap(),
            Word::parse("2001", 3).unwrap(),
        ];
        let c = ExplicitCode::new(4, 3, ws, 1, Family::Explicit).unwrap();
        assert!(
            matches!(verify_claim(&c, 4, 2, 2, 2).verdict, Verdict::Refuted(r) if r.contains("non-binary"))
        );
    }
}
