//! Code objects: binary linear codes given by generator matrices, explicit
//! codeword lists over any Z_q, the classical constructions used here (BCH,
//! first-order Reed-Muller), and the shortening/puncturing transforms.

mod io;

use std::fmt;

use num_bigint::BigUint;

use crate::algebra;
use crate::error::{Error, Result};
use crate::words::{low_mask, Word, MAX_LEN};

pub use io::{
    load_explicit, load_generator_matrix, parse_explicit, parse_generator_matrix, render_explicit,
    render_generator_matrix, save_explicit, save_generator_matrix,
};

/// Largest dimension for which a minimum distance is computed by full
/// enumeration.
pub const MAX_ENUMERABLE_DIMENSION: usize = 26;

/// Explicit codes up to this many words get their pairwise distance checked
/// on construction.
pub const EXPLICIT_CHECK_LIMIT: usize = 4096;

/// Where a code came from. Rendered as the `code_id` used in reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Bch { m: u32, delta: u32 },
    ReedMuller1 { m: u32 },
    MatrixFile { name: String },
    Generator,
    Explicit,
    Shortened(Box<Family>, usize),
    Punctured(Box<Family>, usize),
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Bch { m, delta } => write!(f, "bch-{m}-{delta}"),
            Family::ReedMuller1 { m } => write!(f, "rm1-{m}"),
            Family::MatrixFile { name } => write!(f, "matrix-{name}"),
            Family::Generator => write!(f, "generator"),
            Family::Explicit => write!(f, "explicit"),
            Family::Shortened(parent, i) => write!(f, "{parent}-shorten{i}"),
            Family::Punctured(parent, i) => write!(f, "{parent}-puncture{i}"),
        }
    }
}

/// Parameters shared by every code: length, alphabet, exact size and the
/// distance the construction guarantees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeSpec {
    pub n: usize,
    pub q: u16,
    pub size: BigUint,
    pub design_distance: usize,
    pub family: Family,
}

impl CodeSpec {
    pub fn code_id(&self) -> String {
        self.family.to_string()
    }
}

/// A binary linear code. `rows` are the independent generator rows in the
/// order supplied; `reduced` is their reduced row echelon form, whose pivot
/// coordinates are recorded in `pivots`.
#[derive(Clone, Debug)]
pub struct LinearCode {
    spec: CodeSpec,
    rows: Vec<u128>,
    reduced: Vec<u128>,
    pivots: Vec<usize>,
}

/// Reduces `row` against an echelon basis whose pivots are the leading bits.
fn reduce_against(mut row: u128, basis: &[u128]) -> u128 {
    for &b in basis {
        let lead = 127 - b.leading_zeros();
        if row >> lead & 1 == 1 {
            row ^= b;
        }
    }
    row
}

impl LinearCode {
    /// Row-reduces the given generator rows. Dependent rows are dropped, so
    /// `dimension()` is the effective k. When `design_distance` is `None`
    /// the exact minimum distance is computed if 2^k is enumerable, and 1 is
    /// assumed otherwise.
    pub fn from_generator(
        rows: &[Word],
        family: Family,
        design_distance: Option<usize>,
    ) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::Parameter("generator matrix has no rows".into()))?;
        let n = first.len();
        let mut packed = Vec::with_capacity(rows.len());
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parameter(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            packed.push(
                row.bits()
                    .ok_or_else(|| Error::Parameter(format!("row {i} is not over Z_2")))?,
            );
        }
        Self::from_packed(n, &packed, family, design_distance)
    }

    pub fn from_packed(
        n: usize,
        rows: &[u128],
        family: Family,
        design_distance: Option<usize>,
    ) -> Result<Self> {
        if n == 0 || n > MAX_LEN {
            return Err(Error::Parameter(format!(
                "length {n} outside 1..={MAX_LEN}"
            )));
        }
        if rows.iter().any(|r| r & !low_mask(n) != 0) {
            return Err(Error::Parameter(format!("row wider than length {n}")));
        }
        let mut kept = Vec::new();
        let mut basis: Vec<u128> = Vec::new();
        for &row in rows {
            let r = reduce_against(row, &basis);
            if r != 0 {
                kept.push(row);
                basis.push(r);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        // Back-substitute so each pivot column has a single one.
        for i in 0..basis.len() {
            let lead = 127 - basis[i].leading_zeros();
            for j in 0..basis.len() {
                if j != i && basis[j] >> lead & 1 == 1 {
                    basis[j] ^= basis[i];
                }
            }
        }
        let pivots = basis
            .iter()
            .map(|b| n - 1 - (127 - b.leading_zeros()) as usize)
            .collect();
        let k = kept.len();
        let mut code = LinearCode {
            spec: CodeSpec {
                n,
                q: 2,
                size: BigUint::from(1u8) << k,
                design_distance: 1,
                family,
            },
            rows: kept,
            reduced: basis,
            pivots,
        };
        code.spec.design_distance = match design_distance {
            Some(d) => {
                if d == 0 || d > n {
                    return Err(Error::Parameter(format!(
                        "design distance {d} outside 1..={n}"
                    )));
                }
                d
            }
            None if k <= MAX_ENUMERABLE_DIMENSION => code.min_weight()?.unwrap_or(n),
            None => 1,
        };
        Ok(code)
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.spec.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dimension(&self) -> usize {
        self.rows.len()
    }

    pub fn design_distance(&self) -> usize {
        self.spec.design_distance
    }

    pub fn family(&self) -> &Family {
        &self.spec.family
    }

    /// Generator rows as supplied (dependent rows removed).
    pub fn rows(&self) -> Vec<Word> {
        self.rows
            .iter()
            .map(|&r| Word::binary(self.spec.n, r).unwrap())
            .collect()
    }

    pub fn packed_rows(&self) -> &[u128] {
        &self.rows
    }

    pub fn reduced_rows(&self) -> &[u128] {
        &self.reduced
    }

    /// Pivot coordinates of the reduced generator matrix, in increasing order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Packed mask of the pivot coordinates.
    pub fn pivot_mask(&self) -> u128 {
        self.pivots
            .iter()
            .fold(0, |acc, &p| acc | 1u128 << (self.spec.n - 1 - p))
    }

    /// Packed mask of the coordinates off the pivots; words supported here
    /// form a transversal of the cosets of the code.
    pub fn free_mask(&self) -> u128 {
        low_mask(self.spec.n) & !self.pivot_mask()
    }

    /// Packed codewords in reflected-binary message order.
    pub fn codewords_packed(&self) -> GrayCodewords<'_> {
        GrayCodewords::new(&self.reduced)
    }

    /// All 2^k codewords, starting from the zero word; consecutive words
    /// differ by exactly one generator row.
    pub fn enumerate_codewords(&self) -> impl Iterator<Item = Word> + '_ {
        let n = self.spec.n;
        self.codewords_packed()
            .map(move |c| Word::binary(n, c).unwrap())
    }

    pub fn contains(&self, word: u128) -> bool {
        reduce_against(word, &self.reduced) == 0
    }

    /// Exact minimum weight of a nonzero codeword; `None` for the zero code.
    pub fn min_weight(&self) -> Result<Option<usize>> {
        min_weight_linear(self, MAX_ENUMERABLE_DIMENSION)
    }

    /// Weight distribution, indexed by weight 0..=n.
    pub fn weight_distribution(&self) -> Vec<u64> {
        let mut dist = vec![0u64; self.spec.n + 1];
        for c in self.codewords_packed() {
            dist[c.count_ones() as usize] += 1;
        }
        dist
    }

    /// Deletes the given coordinates from every codeword.
    pub fn puncture_positions(&self, positions: &[usize], family: Family) -> Result<LinearCode> {
        let keep = kept_coordinates(self.spec.n, positions)?;
        let rows: Vec<u128> = self
            .rows
            .iter()
            .map(|&r| select_coordinates(r, self.spec.n, &keep))
            .collect();
        let removed = self.spec.n - keep.len();
        let d = self.spec.design_distance.saturating_sub(removed).max(1);
        if rows.iter().all(|&r| r == 0) {
            return Err(Error::EmptyCode(
                "puncturing removed every nonzero coordinate".into(),
            ));
        }
        LinearCode::from_packed(keep.len(), &rows, family, Some(d.min(keep.len())))
    }

    /// Keeps the codewords vanishing on the given coordinates, then deletes
    /// those coordinates.
    pub fn shorten_positions(&self, positions: &[usize], family: Family) -> Result<LinearCode> {
        let keep = kept_coordinates(self.spec.n, positions)?;
        let mut rows = self.reduced.clone();
        for &p in positions {
            let bit = 1u128 << (self.spec.n - 1 - p);
            if let Some(idx) = rows.iter().position(|r| r & bit != 0) {
                let pivot = rows.swap_remove(idx);
                for r in rows.iter_mut().filter(|r| **r & bit != 0) {
                    *r ^= pivot;
                }
            }
        }
        let rows: Vec<u128> = rows
            .into_iter()
            .map(|r| select_coordinates(r, self.spec.n, &keep))
            .collect();
        if rows.is_empty() {
            return Err(Error::EmptyCode(
                "shortening left only the zero codeword".into(),
            ));
        }
        let d = self.spec.design_distance.min(keep.len());
        LinearCode::from_packed(keep.len(), &rows, family, Some(d))
    }

    /// Punctures the last `i` coordinates.
    pub fn puncture(&self, i: usize) -> Result<LinearCode> {
        check_transform_count(i, self.spec.n, "puncture")?;
        let positions: Vec<usize> = (self.spec.n - i..self.spec.n).collect();
        self.puncture_positions(
            &positions,
            Family::Punctured(Box::new(self.spec.family.clone()), i),
        )
    }

    /// Shortens at the last `i` coordinates. `i = 0` returns the code
    /// unchanged.
    pub fn shorten(&self, i: usize) -> Result<LinearCode> {
        if i == 0 {
            return Ok(self.clone());
        }
        check_transform_count(i, self.spec.n, "shorten")?;
        let positions: Vec<usize> = (self.spec.n - i..self.spec.n).collect();
        self.shorten_positions(
            &positions,
            Family::Shortened(Box::new(self.spec.family.clone()), i),
        )
    }

    /// Lists every codeword as an explicit code.
    pub fn to_explicit(&self) -> Result<ExplicitCode> {
        if self.dimension() > MAX_ENUMERABLE_DIMENSION {
            return Err(Error::Budget {
                work: 1u128 << self.dimension(),
                limit: 1u128 << MAX_ENUMERABLE_DIMENSION,
            });
        }
        let words = self.enumerate_codewords().collect();
        ExplicitCode::new(
            self.spec.n,
            2,
            words,
            self.spec.design_distance,
            self.spec.family.clone(),
        )
    }
}

fn check_transform_count(i: usize, n: usize, what: &str) -> Result<()> {
    if i == 0 || i >= n {
        return Err(Error::Parameter(format!(
            "cannot {what} {i} positions of a length-{n} code (need 1 <= i < n)"
        )));
    }
    Ok(())
}

fn kept_coordinates(n: usize, removed: &[usize]) -> Result<Vec<usize>> {
    let mut drop = vec![false; n];
    for &p in removed {
        if p >= n {
            return Err(Error::Parameter(format!(
                "coordinate {p} outside length {n}"
            )));
        }
        drop[p] = true;
    }
    let keep: Vec<usize> = (0..n).filter(|&i| !drop[i]).collect();
    if keep.is_empty() {
        return Err(Error::Parameter("cannot remove every coordinate".into()));
    }
    Ok(keep)
}

/// Packs the listed coordinates of a packed word into a shorter word.
fn select_coordinates(bits: u128, n: usize, keep: &[usize]) -> u128 {
    keep.iter()
        .fold(0u128, |acc, &i| (acc << 1) | (bits >> (n - 1 - i) & 1))
}

/// Codewords of a binary linear code in reflected-binary (Gray) message
/// order: step t XORs in the row indexed by the trailing zeros of t.
#[derive(Clone, Debug)]
pub struct GrayCodewords<'a> {
    rows: &'a [u128],
    current: u128,
    step: u128,
    total: u128,
}

impl<'a> GrayCodewords<'a> {
    pub fn new(rows: &'a [u128]) -> Self {
        assert!(rows.len() < 128, "dimension too large to enumerate");
        GrayCodewords {
            rows,
            current: 0,
            step: 0,
            total: 1u128 << rows.len(),
        }
    }
}

impl Iterator for GrayCodewords<'_> {
    type Item = u128;

    #[inline]
    fn next(&mut self) -> Option<u128> {
        if self.step == self.total {
            return None;
        }
        if self.step > 0 {
            self.current ^= self.rows[self.step.trailing_zeros() as usize];
        }
        self.step += 1;
        Some(self.current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = usize::try_from(self.total - self.step).unwrap_or(usize::MAX);
        (left, Some(left))
    }
}

/// Exact minimum nonzero weight by enumerating all 2^k codewords. Fails if
/// k exceeds `max_dimension`.
pub fn min_weight_linear(code: &LinearCode, max_dimension: usize) -> Result<Option<usize>> {
    let k = code.dimension();
    if k > max_dimension {
        return Err(Error::Budget {
            work: 1u128 << k.min(127),
            limit: 1u128 << max_dimension,
        });
    }
    Ok(code
        .codewords_packed()
        .skip(1)
        .map(|c| c.count_ones() as usize)
        .min())
}

/// Narrow-sense primitive binary BCH code of length 2^m - 1 with designed
/// distance `delta`, generated by cyclic shifts of its generator polynomial.
pub fn bch_code(m: u32, delta: u32) -> Result<LinearCode> {
    if !(2..=7).contains(&m) {
        return Err(Error::Parameter(format!(
            "BCH length 2^{m} - 1 outside the supported range (m in 2..=7)"
        )));
    }
    let n = (1usize << m) - 1;
    let family = Family::Bch { m, delta };
    if delta == 1 {
        let rows: Vec<u128> = (0..n).map(|i| 1u128 << i).collect();
        return LinearCode::from_packed(n, &rows, family, Some(1));
    }
    if delta as usize > n {
        return Err(Error::Parameter(format!(
            "designed distance {delta} outside 1..={n}"
        )));
    }
    let g = algebra::bch_generator(m, delta)?;
    let deg = g.degree().expect("generator polynomial is nonzero");
    let k = n - deg;
    // Coefficient of x^t sits at coordinate t.
    let base = (0..=deg)
        .filter(|&t| g.coeff(t))
        .fold(0u128, |acc, t| acc | 1u128 << (n - 1 - t));
    let rows: Vec<u128> = (0..k).map(|j| base >> j).collect();
    LinearCode::from_packed(n, &rows, family, Some(delta as usize))
}

/// First-order Reed-Muller code RM(1, m): length 2^m, dimension m + 1,
/// minimum distance 2^(m-1). Coordinate t corresponds to the point of
/// F_2^m with binary expansion t.
pub fn reed_muller_1(m: u32) -> Result<LinearCode> {
    if !(1..=7).contains(&m) {
        return Err(Error::Parameter(format!(
            "Reed-Muller length 2^{m} outside 2..=128"
        )));
    }
    let n = 1usize << m;
    let mut rows = vec![low_mask(n)];
    for bit in 0..m {
        let row = (0..n)
            .filter(|t| t >> bit & 1 == 1)
            .fold(0u128, |acc, t| acc | 1u128 << (n - 1 - t));
        rows.push(row);
    }
    LinearCode::from_packed(n, &rows, Family::ReedMuller1 { m }, Some(n / 2))
}

/// A code given by its list of codewords, over any alphabet. Words are kept
/// sorted in colex order.
#[derive(Clone, Debug)]
pub struct ExplicitCode {
    spec: CodeSpec,
    words: Vec<Word>,
    distance_checked: bool,
}

impl ExplicitCode {
    /// Validates shape, duplicate-freedom and (for lists of at most
    /// `EXPLICIT_CHECK_LIMIT` words) the declared distance. An empty list is
    /// allowed.
    pub fn new(
        n: usize,
        q: u16,
        mut words: Vec<Word>,
        design_distance: usize,
        family: Family,
    ) -> Result<Self> {
        if n == 0 || n > MAX_LEN {
            return Err(Error::Parameter(format!(
                "length {n} outside 1..={MAX_LEN}"
            )));
        }
        // A declared distance above n is allowed: it only admits codes of
        // at most one word.
        if design_distance == 0 {
            return Err(Error::Parameter(
                "design distance must be at least 1".into(),
            ));
        }
        if let Some(w) = words.iter().find(|w| w.len() != n || w.q() != q) {
            return Err(Error::Mismatch {
                n1: n,
                q1: q,
                n2: w.len(),
                q2: w.q(),
            });
        }
        words.sort_by(|a, b| a.colex_cmp(b));
        if let Some(pair) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::Invalid(format!("duplicate codeword {}", pair[0])));
        }
        let distance_checked = words.len() <= EXPLICIT_CHECK_LIMIT;
        if distance_checked {
            for (i, a) in words.iter().enumerate() {
                for b in &words[i + 1..] {
                    let dist = a.distance(b)?;
                    if dist < design_distance {
                        return Err(Error::Invalid(format!(
                            "distance({a}, {b}) = {dist} < {design_distance}"
                        )));
                    }
                }
            }
        }
        Ok(ExplicitCode {
            spec: CodeSpec {
                n,
                q,
                size: BigUint::from(words.len()),
                design_distance,
                family,
            },
            words,
            distance_checked,
        })
    }

    pub fn spec(&self) -> &CodeSpec {
        &self.spec
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    /// False when the list was too long for the construction-time distance check.
    pub fn distance_checked(&self) -> bool {
        self.distance_checked
    }

    pub fn puncture(&self, i: usize) -> Result<ExplicitCode> {
        check_transform_count(i, self.spec.n, "puncture")?;
        let n = self.spec.n - i;
        let mut words: Vec<Word> = self
            .words
            .iter()
            .map(|w| Word::from_symbols(self.spec.q, &w.symbols()[..n]))
            .collect::<Result<_>>()?;
        words.sort_by(|a, b| a.colex_cmp(b));
        words.dedup();
        let d = self.spec.design_distance.saturating_sub(i).max(1);
        ExplicitCode::new(
            n,
            self.spec.q,
            words,
            d,
            Family::Punctured(Box::new(self.spec.family.clone()), i),
        )
    }

    pub fn shorten(&self, i: usize) -> Result<ExplicitCode> {
        if i == 0 {
            return Ok(self.clone());
        }
        check_transform_count(i, self.spec.n, "shorten")?;
        let n = self.spec.n - i;
        let words: Vec<Word> = self
            .words
            .iter()
            .filter(|w| (n..self.spec.n).all(|j| w.symbol(j) == 0))
            .map(|w| Word::from_symbols(self.spec.q, &w.symbols()[..n]))
            .collect::<Result<_>>()?;
        if words.is_empty() {
            return Err(Error::EmptyCode(format!("shortening {i} positions")));
        }
        ExplicitCode::new(
            n,
            self.spec.q,
            words,
            self.spec.design_distance.min(n),
            Family::Shortened(Box::new(self.spec.family.clone()), i),
        )
    }
}

/// Either kind of code, for operations that accept both.
#[derive(Clone, Debug)]
pub enum Code {
    Linear(LinearCode),
    Explicit(ExplicitCode),
}

impl Code {
    pub fn spec(&self) -> &CodeSpec {
        match self {
            Code::Linear(c) => c.spec(),
            Code::Explicit(c) => c.spec(),
        }
    }

    pub fn n(&self) -> usize {
        self.spec().n
    }

    pub fn q(&self) -> u16 {
        self.spec().q
    }

    pub fn puncture(&self, i: usize) -> Result<Code> {
        Ok(match self {
            Code::Linear(c) => Code::Linear(c.puncture(i)?),
            Code::Explicit(c) => Code::Explicit(c.puncture(i)?),
        })
    }

    pub fn shorten(&self, i: usize) -> Result<Code> {
        Ok(match self {
            Code::Linear(c) => Code::Linear(c.shorten(i)?),
            Code::Explicit(c) => Code::Explicit(c.shorten(i)?),
        })
    }

    /// Exact minimum distance when computable: by minimum weight for linear
    /// codes, pairwise otherwise.
    pub fn true_distance(&self) -> Result<Option<usize>> {
        match self {
            Code::Linear(c) => c.min_weight(),
            Code::Explicit(c) => {
                crate::verify::min_distance_pairwise(c, crate::verify::DEFAULT_PAIR_BUDGET)
            }
        }
    }
}

impl From<LinearCode> for Code {
    fn from(c: LinearCode) -> Self {
        Code::Linear(c)
    }
}

impl From<ExplicitCode> for Code {
    fn from(c: ExplicitCode) -> Self {
        Code::Explicit(c)
    }
}
