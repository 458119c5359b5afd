// Coset sweeps: find, for each target weight, the translate u + C that
// contains the most words of J^n(w) (fixed mode) or of J^n(w-1) ∪ J^n(w)
// (extend mode).
//
// Binary linear codes are swept over the transversal of words vanishing on
// the pivot columns of the reduced generator matrix: exactly one
// representative per coset. Representatives are visited in increasing colex
// order of their free-coordinate pattern, which is also the numeric order of
// the packed representative. Explicit codes are swept over all of Z_q^n.
//
// The representative space is cut into fixed contiguous chunks that are
// scanned in parallel, each with a private best-per-target accumulator.
// Accumulators merge by (count desc, representative asc), so the result does
// not depend on the thread count or scheduling.

use std::ops::{BitAnd, BitOr, BitXor};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{check_weights, Mode};
use crate::codebook::{Code, ExplicitCode, LinearCode};
use crate::error::{Error, Result};
use crate::words::{low_mask, Word};

/// Default cap on cosets × codewords for an exhaustive sweep.
pub const DEFAULT_MAX_WORK: u128 = 1 << 40;

const TARGET_CHUNKS: u128 = 4096;

pub const SWEEP_CSV_HEADER: &str = "code_id,mode,w,count,representative,exhaustive,cosets_examined";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    /// `budget` representatives drawn from a ChaCha8 stream seeded with `seed`.
    Sample {
        budget: u64,
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub threads: usize,
    pub max_work: u128,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
            max_work: DEFAULT_MAX_WORK,
        }
    }
}

/// Best translate found for one (mode, w) target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepEntry {
    pub mode: Mode,
    pub w: usize,
    pub count: u64,
    pub representative: Word,
}

#[derive(Clone, Debug)]
pub struct SweepReport {
    pub code_id: String,
    pub n: usize,
    pub q: u16,
    pub exhaustive: bool,
    pub cosets_examined: u128,
    pub entries: Vec<SweepEntry>,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn entry(&self, mode: Mode, w: usize) -> Option<&SweepEntry> {
        self.entries.iter().find(|e| e.mode == mode && e.w == w)
    }

    pub fn count(&self, mode: Mode, w: usize) -> Option<u64> {
        self.entry(mode, w).map(|e| e.count)
    }

    /// CSV rows (without header), one per target, in target order.
    pub fn csv_rows(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|e| {
                format!(
                    "{},{},{},{},{},{},{}",
                    self.code_id,
                    e.mode,
                    e.w,
                    e.count,
                    e.representative,
                    self.exhaustive,
                    self.cosets_examined
                )
            })
            .collect()
    }
}

trait Lane:
    Copy + Send + Sync + BitXor<Output = Self> + BitAnd<Output = Self> + BitOr<Output = Self>
{
    fn ones(self) -> u32;
    fn from_u128(x: u128) -> Self;
}

impl Lane for u64 {
    #[inline(always)]
    fn ones(self) -> u32 {
        self.count_ones()
    }
    #[inline(always)]
    fn from_u128(x: u128) -> Self {
        x as u64
    }
}

impl Lane for u128 {
    #[inline(always)]
    fn ones(self) -> u32 {
        self.count_ones()
    }
    #[inline(always)]
    fn from_u128(x: u128) -> Self {
        x
    }
}

/// Per-target running maxima with colex-least tie-break.
#[derive(Clone, Debug)]
struct Best {
    counts: Vec<u64>,
    reps: Vec<u128>,
}

impl Best {
    fn new(targets: usize) -> Self {
        Best {
            counts: vec![0; targets],
            reps: vec![u128::MAX; targets],
        }
    }

    #[inline]
    fn offer(&mut self, t: usize, count: u64, rep: u128) {
        if count > self.counts[t] || (count == self.counts[t] && rep < self.reps[t]) {
            self.counts[t] = count;
            self.reps[t] = rep;
        }
    }

    fn merge(mut self, other: Best) -> Best {
        for t in 0..self.counts.len() {
            self.offer(t, other.counts[t], other.reps[t]);
        }
        self
    }

    #[inline]
    fn offer_histogram(&mut self, targets: &[(Mode, usize)], hist: &[u32], rep: u128) {
        for (t, &(mode, w)) in targets.iter().enumerate() {
            let score = match mode {
                Mode::Fixed => hist[w] as u64,
                Mode::Extend => hist[w] as u64 + hist[w - 1] as u64,
            };
            self.offer(t, score, rep);
        }
    }
}

/// Successive transversal words: the pivot bits are forced to one before
/// incrementing so the carry skips them.
#[derive(Clone, Debug)]
struct Transversal {
    next: u128,
    pivot: u128,
    free: u128,
    remaining: u128,
}

impl Iterator for Transversal {
    type Item = u128;

    #[inline]
    fn next(&mut self) -> Option<u128> {
        if self.remaining == 0 {
            return None;
        }
        let u = self.next;
        self.remaining -= 1;
        self.next = (u | self.pivot).wrapping_add(1) & self.free;
        Some(u)
    }
}

/// Scatters the low bits of `pattern` onto the set bits of `mask`, lowest first.
fn deposit(mut pattern: u128, mask: u128) -> u128 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 && pattern != 0 {
        let low = m & m.wrapping_neg();
        if pattern & 1 == 1 {
            out |= low;
        }
        pattern >>= 1;
        m ^= low;
    }
    out
}

#[inline(always)]
fn scan_generic<L: Lane>(
    codewords: &[L],
    reps: impl Iterator<Item = u128>,
    n: usize,
    targets: &[(Mode, usize)],
    best: &mut Best,
) {
    let mut hist = [0u32; 129];
    for rep in reps {
        hist[..=n].fill(0);
        let u = L::from_u128(rep);
        for &c in codewords {
            hist[(u ^ c).ones() as usize] += 1;
        }
        best.offer_histogram(targets, &hist, rep);
    }
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "popcnt")]
unsafe fn scan_popcnt<L: Lane>(
    codewords: &[L],
    reps: impl Iterator<Item = u128>,
    n: usize,
    targets: &[(Mode, usize)],
    best: &mut Best,
) {
    scan_generic(codewords, reps, n, targets, best)
}

fn scan<L: Lane>(
    codewords: &[L],
    reps: impl Iterator<Item = u128>,
    n: usize,
    targets: &[(Mode, usize)],
    best: &mut Best,
) {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("popcnt") {
            // SAFETY: the CPU supports popcnt, checked just above.
            unsafe { scan_popcnt(codewords, reps, n, targets, best) };
            return;
        }
    }
    scan_generic(codewords, reps, n, targets, best)
}

/// A binary code reduced to packed codewords plus a representative space.
struct BinarySweep<'a> {
    n: usize,
    codewords: Vec<u128>,
    pivot: u128,
    free: u128,
    targets: &'a [(Mode, usize)],
}

impl BinarySweep<'_> {
    fn free_bits(&self) -> u32 {
        self.free.count_ones()
    }

    fn run_with<L: Lane>(&self, pool: &rayon::ThreadPool, strategy: Strategy) -> Best {
        let codewords: Vec<L> = self.codewords.iter().map(|&c| L::from_u128(c)).collect();
        let targets = self.targets;
        let n = self.n;
        match strategy {
            Strategy::Exhaustive => {
                let total = 1u128 << self.free_bits();
                let chunks = total.min(TARGET_CHUNKS);
                let chunk_len = total.div_ceil(chunks);
                pool.install(|| {
                    (0..chunks as u64)
                        .into_par_iter()
                        .map(|c| {
                            let start = c as u128 * chunk_len;
                            let len = chunk_len.min(total - start);
                            let reps = Transversal {
                                next: deposit(start, self.free),
                                pivot: self.pivot,
                                free: self.free,
                                remaining: len,
                            };
                            let mut best = Best::new(targets.len());
                            scan(&codewords, reps, n, targets, &mut best);
                            best
                        })
                        .reduce(|| Best::new(targets.len()), Best::merge)
                })
            }
            Strategy::Sample { budget, seed } => {
                let reps = self.sample(budget, seed);
                let chunk_len = (reps.len() as u128).div_ceil(TARGET_CHUNKS).max(1) as usize;
                pool.install(|| {
                    reps.par_chunks(chunk_len)
                        .map(|chunk| {
                            let mut best = Best::new(targets.len());
                            scan(&codewords, chunk.iter().copied(), n, targets, &mut best);
                            best
                        })
                        .reduce(|| Best::new(targets.len()), Best::merge)
                })
            }
        }
    }

    fn sample(&self, budget: u64, seed: u64) -> Vec<u128> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let bits = self.free_bits();
        (0..budget)
            .map(|_| {
                let pattern = if bits == 128 {
                    rng.random::<u128>()
                } else {
                    rng.random_range(0..1u128 << bits)
                };
                deposit(pattern, self.free)
            })
            .collect()
    }
}

fn qary_digits(mut index: u128, n: usize, q: u16) -> Vec<u8> {
    let mut digits = vec![0u8; n];
    for d in digits.iter_mut().rev() {
        *d = (index % q as u128) as u8;
        index /= q as u128;
    }
    digits
}

fn scan_qary(
    words: &[Vec<u8>],
    q: u16,
    n: usize,
    reps: impl Iterator<Item = u128>,
    targets: &[(Mode, usize)],
    best: &mut Best,
) {
    let mut hist = [0u32; 129];
    for rep in reps {
        hist[..=n].fill(0);
        let u = qary_digits(rep, n, q);
        'words: for x in words {
            let mut wt = 0;
            for (a, b) in u.iter().zip(x) {
                match (*a as u16 + *b as u16) % q {
                    0 => {}
                    1 => wt += 1,
                    _ => continue 'words,
                }
            }
            hist[wt] += 1;
        }
        best.offer_histogram(targets, &hist, rep);
    }
}

fn qary_space(n: usize, q: u16) -> Result<u128> {
    (q as u128)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::Parameter(format!("{q}^{n} representatives cannot be indexed")))
}

fn sweep_qary(
    code: &ExplicitCode,
    targets: &[(Mode, usize)],
    strategy: Strategy,
    config: &SweepConfig,
    pool: &rayon::ThreadPool,
) -> Result<(Best, u128)> {
    let (n, q) = (code.spec().n, code.spec().q);
    let total = qary_space(n, q)?;
    let words: Vec<Vec<u8>> = code.words().iter().map(|w| w.symbols()).collect();
    match strategy {
        Strategy::Exhaustive => {
            let work = total.saturating_mul(words.len().max(1) as u128);
            if work > config.max_work {
                return Err(Error::Budget {
                    work,
                    limit: config.max_work,
                });
            }
            let chunks = total.min(TARGET_CHUNKS);
            let chunk_len = total.div_ceil(chunks);
            let best = pool.install(|| {
                (0..chunks as u64)
                    .into_par_iter()
                    .map(|c| {
                        let start = c as u128 * chunk_len;
                        let end = (start + chunk_len).min(total);
                        let mut best = Best::new(targets.len());
                        scan_qary(&words, q, n, start..end, targets, &mut best);
                        best
                    })
                    .reduce(|| Best::new(targets.len()), Best::merge)
            });
            Ok((best, total))
        }
        Strategy::Sample { budget, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let reps: Vec<u128> = (0..budget).map(|_| rng.random_range(0..total)).collect();
            let chunk_len = (reps.len() as u128).div_ceil(TARGET_CHUNKS).max(1) as usize;
            let best = pool.install(|| {
                reps.par_chunks(chunk_len)
                    .map(|chunk| {
                        let mut best = Best::new(targets.len());
                        scan_qary(&words, q, n, chunk.iter().copied(), targets, &mut best);
                        best
                    })
                    .reduce(|| Best::new(targets.len()), Best::merge)
            });
            Ok((best, budget as u128))
        }
    }
}

fn binary_sweep<'a>(code: &Code, targets: &'a [(Mode, usize)]) -> Option<BinarySweep<'a>> {
    let n = code.n();
    match code {
        Code::Linear(c) => Some(linear_sweep(c, targets)),
        Code::Explicit(c) if c.spec().q == 2 => Some(BinarySweep {
            n,
            codewords: c.words().iter().map(|w| w.bits().unwrap()).collect(),
            pivot: 0,
            free: low_mask(n),
            targets,
        }),
        Code::Explicit(_) => None,
    }
}

fn linear_sweep<'a>(c: &LinearCode, targets: &'a [(Mode, usize)]) -> BinarySweep<'a> {
    BinarySweep {
        n: c.len(),
        codewords: c.codewords_packed().collect(),
        pivot: c.pivot_mask(),
        free: c.free_mask(),
        targets,
    }
}

/// Finds, for every requested weight and mode, the translate of `code`
/// with the largest score and the colex-least representative among ties.
/// All targets are scored from one histogram per translate.
pub fn sweep(
    code: &Code,
    weights: &[usize],
    modes: &[Mode],
    strategy: Strategy,
    config: &SweepConfig,
) -> Result<SweepReport> {
    let started = Instant::now();
    let n = code.n();
    let q = code.q();
    check_weights(weights, n)?;
    if modes.is_empty() || weights.is_empty() {
        return Err(Error::Parameter(
            "a sweep needs at least one weight and one mode".into(),
        ));
    }
    let mut targets: Vec<(Mode, usize)> = modes
        .iter()
        .flat_map(|&m| weights.iter().map(move |&w| (m, w)))
        .collect();
    targets.sort_unstable();
    targets.dedup();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.threads.max(1))
        .build()
        .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?;

    let (best, examined) = match binary_sweep(code, &targets) {
        Some(bs) => {
            let examined = match strategy {
                Strategy::Exhaustive => {
                    let cosets = 1u128.checked_shl(bs.free_bits()).unwrap_or(u128::MAX);
                    let work = cosets.saturating_mul(bs.codewords.len() as u128);
                    if bs.free_bits() == 128 || work > config.max_work {
                        return Err(Error::Budget {
                            work,
                            limit: config.max_work,
                        });
                    }
                    cosets
                }
                Strategy::Sample { budget, .. } => budget as u128,
            };
            let best = if n <= 64 {
                bs.run_with::<u64>(&pool, strategy)
            } else {
                bs.run_with::<u128>(&pool, strategy)
            };
            (best, examined)
        }
        None => match code {
            Code::Explicit(c) => sweep_qary(c, &targets, strategy, config, &pool)?,
            Code::Linear(_) => unreachable!(),
        },
    };

    let entries = targets
        .iter()
        .enumerate()
        .map(|(t, &(mode, w))| {
            let rep = best.reps[t];
            let representative = if q == 2 {
                Word::binary(n, rep)
            } else {
                Word::from_symbols(q, &qary_digits(rep, n, q))
            }?;
            Ok(SweepEntry {
                mode,
                w,
                count: best.counts[t],
                representative,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(SweepReport {
        code_id: code.spec().code_id(),
        n,
        q,
        exhaustive: strategy == Strategy::Exhaustive,
        cosets_examined: examined,
        entries,
        elapsed: started.elapsed(),
    })
}
