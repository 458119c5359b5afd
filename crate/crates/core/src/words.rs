//! Words over Z_q, their weights and distances, and enumeration of the
//! binary Johnson space J^n(w).
//!
//! Binary words are packed into a `u128`. Coordinate `i` lives at bit
//! `n - 1 - i`, so the numeric order of packed words agrees with the
//! lexicographic order of their textual rendering (index 0 leftmost), and
//! "the last i coordinates" are the low i bits. All orders on words in this
//! crate ("colex order" below) refer to this numeric order: coordinate 0 is
//! the most significant.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

pub const MAX_LEN: usize = 128;
pub const MAX_Q: u16 = 255;

#[derive(Clone, PartialEq, Eq, Hash)]
enum Symbols {
    Packed(u128),
    Bytes(Box<[u8]>),
}

/// A length-n vector over Z_q.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    n: usize,
    q: u16,
    symbols: Symbols,
}

/// Mask with the low `n` bits set.
#[inline]
pub fn low_mask(n: usize) -> u128 {
    if n >= 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn check_shape(n: usize, q: u16) -> Result<()> {
    if n == 0 || n > MAX_LEN {
        return Err(Error::Parameter(format!(
            "length {n} outside 1..={MAX_LEN}"
        )));
    }
    if !(2..=MAX_Q).contains(&q) {
        return Err(Error::Parameter(format!(
            "alphabet size {q} outside 2..={MAX_Q}"
        )));
    }
    Ok(())
}

impl Word {
    pub fn zero(n: usize, q: u16) -> Result<Self> {
        check_shape(n, q)?;
        let symbols = if q == 2 {
            Symbols::Packed(0)
        } else {
            Symbols::Bytes(vec![0; n].into_boxed_slice())
        };
        Ok(Word { n, q, symbols })
    }

    /// A binary word from its packed form (coordinate i at bit n-1-i).
    pub fn binary(n: usize, bits: u128) -> Result<Self> {
        check_shape(n, 2)?;
        if bits & !low_mask(n) != 0 {
            return Err(Error::Parameter(format!(
                "packed word has bits set beyond length {n}"
            )));
        }
        Ok(Word {
            n,
            q: 2,
            symbols: Symbols::Packed(bits),
        })
    }

    pub fn from_symbols(q: u16, symbols: &[u8]) -> Result<Self> {
        check_shape(symbols.len(), q)?;
        if let Some((position, &s)) = symbols.iter().enumerate().find(|(_, &s)| s as u16 >= q) {
            return Err(Error::Symbol {
                symbol: s as u16,
                position,
                q,
            });
        }
        let n = symbols.len();
        if q == 2 {
            let bits = symbols.iter().fold(0u128, |acc, &s| (acc << 1) | s as u128);
            Ok(Word {
                n,
                q,
                symbols: Symbols::Packed(bits),
            })
        } else {
            Ok(Word {
                n,
                q,
                symbols: Symbols::Bytes(symbols.into()),
            })
        }
    }

    /// Parses the textual form: one character per symbol, `0-9` then `a-z`.
    pub fn parse(text: &str, q: u16) -> Result<Self> {
        let mut symbols = Vec::with_capacity(text.len());
        for (position, ch) in text.chars().enumerate() {
            let s = ch.to_digit(36).ok_or_else(|| {
                Error::Parameter(format!("invalid symbol {ch:?} at position {position}"))
            })?;
            if s >= q as u32 {
                return Err(Error::Symbol {
                    symbol: s as u16,
                    position,
                    q,
                });
            }
            symbols.push(s as u8);
        }
        Word::from_symbols(q, &symbols)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn q(&self) -> u16 {
        self.q
    }

    pub fn symbol(&self, i: usize) -> u8 {
        assert!(
            i < self.n,
            "coordinate {i} out of range for length {}",
            self.n
        );
        match &self.symbols {
            Symbols::Packed(bits) => (bits >> (self.n - 1 - i) & 1) as u8,
            Symbols::Bytes(b) => b[i],
        }
    }

    pub fn symbols(&self) -> Vec<u8> {
        (0..self.n).map(|i| self.symbol(i)).collect()
    }

    /// Packed form of a q = 2 word.
    pub fn bits(&self) -> Option<u128> {
        match self.symbols {
            Symbols::Packed(bits) => Some(bits),
            Symbols::Bytes(_) => None,
        }
    }

    /// Packed binary form of a binary-valued word of any alphabet, i.e. its
    /// preimage under Z_2 -> Z_q.
    pub fn binary_image(&self) -> Option<u128> {
        match &self.symbols {
            Symbols::Packed(bits) => Some(*bits),
            Symbols::Bytes(b) => b.iter().try_fold(0u128, |acc, &s| match s {
                0 | 1 => Some((acc << 1) | s as u128),
                _ => None,
            }),
        }
    }

    pub fn weight(&self) -> usize {
        match &self.symbols {
            Symbols::Packed(bits) => bits.count_ones() as usize,
            Symbols::Bytes(b) => b.iter().filter(|&&s| s != 0).count(),
        }
    }

    fn check_compatible(&self, other: &Word) -> Result<()> {
        if self.n != other.n || self.q != other.q {
            return Err(Error::Mismatch {
                n1: self.n,
                q1: self.q,
                n2: other.n,
                q2: other.q,
            });
        }
        Ok(())
    }

    pub fn distance(&self, other: &Word) -> Result<usize> {
        self.check_compatible(other)?;
        Ok(match (&self.symbols, &other.symbols) {
            (Symbols::Packed(a), Symbols::Packed(b)) => (a ^ b).count_ones() as usize,
            (Symbols::Bytes(a), Symbols::Bytes(b)) => {
                a.iter().zip(b.iter()).filter(|(x, y)| x != y).count()
            }
            _ => unreachable!("equal q implies equal representation"),
        })
    }

    /// Componentwise sum mod q.
    pub fn add(&self, other: &Word) -> Result<Word> {
        self.check_compatible(other)?;
        let symbols = match (&self.symbols, &other.symbols) {
            (Symbols::Packed(a), Symbols::Packed(b)) => Symbols::Packed(a ^ b),
            (Symbols::Bytes(a), Symbols::Bytes(b)) => {
                let q = self.q;
                Symbols::Bytes(
                    a.iter()
                        .zip(b.iter())
                        .map(|(&x, &y)| ((x as u16 + y as u16) % q) as u8)
                        .collect(),
                )
            }
            _ => unreachable!("equal q implies equal representation"),
        };
        Ok(Word {
            n: self.n,
            q: self.q,
            symbols,
        })
    }

    /// Additive inverse mod q (the identity when q = 2).
    pub fn negate(&self) -> Word {
        match &self.symbols {
            Symbols::Packed(_) => self.clone(),
            Symbols::Bytes(b) => Word {
                n: self.n,
                q: self.q,
                symbols: Symbols::Bytes(
                    b.iter()
                        .map(|&s| ((self.q - s as u16) % self.q) as u8)
                        .collect(),
                ),
            },
        }
    }

    /// True iff every symbol is 0 or 1, i.e. the word lies in the image of
    /// Z_2^n inside Z_q^n.
    pub fn is_binary_valued(&self) -> bool {
        match &self.symbols {
            Symbols::Packed(_) => true,
            Symbols::Bytes(b) => b.iter().all(|&s| s <= 1),
        }
    }

    /// Total order with coordinate 0 most significant; agrees with the
    /// numeric order of packed binary words.
    pub fn colex_cmp(&self, other: &Word) -> Ordering {
        match (&self.symbols, &other.symbols) {
            (Symbols::Packed(a), Symbols::Packed(b)) if self.n == other.n => a.cmp(b),
            _ => (self.n, self.q)
                .cmp(&(other.n, other.q))
                .then_with(|| self.symbols().cmp(&other.symbols())),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: String = (0..self.n)
            .map(|i| char::from_digit(self.symbol(i) as u32, 36).unwrap())
            .collect();
        f.write_str(&text)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word(q={}, {})", self.q, self)
    }
}

/// Next packed word of the same weight in increasing numeric order, or
/// `None` past the last word of length `n`. This is the usual
/// next-combination bit trick.
#[inline]
pub fn next_same_weight(x: u128, n: usize) -> Option<u128> {
    if x == 0 {
        return None;
    }
    let smallest = x & x.wrapping_neg();
    let ripple = x.checked_add(smallest)?;
    let ones = ((x ^ ripple) >> 2) >> smallest.trailing_zeros();
    let next = ripple | ones;
    (next & !low_mask(n) == 0).then_some(next)
}

/// Successor of `u` among binary words of the same length and weight.
pub fn next_in_weight_class(u: &Word) -> Result<Option<Word>> {
    let bits = u
        .binary_image()
        .ok_or_else(|| Error::Parameter(format!("{u} is not binary-valued")))?;
    Ok(next_same_weight(bits, u.len()).map(|next| {
        if u.q() == 2 {
            Word::binary(u.len(), next).unwrap()
        } else {
            let symbols: Vec<u8> = (0..u.len())
                .map(|i| (next >> (u.len() - 1 - i) & 1) as u8)
                .collect();
            Word::from_symbols(u.q(), &symbols).unwrap()
        }
    }))
}

/// Cursor over J^n(w), the binary words of length n and weight w, in
/// increasing colex order.
#[derive(Clone, Debug)]
pub struct WeightClassCursor {
    n: usize,
    next: Option<u128>,
}

impl WeightClassCursor {
    pub fn new(n: usize, w: usize) -> Result<Self> {
        check_shape(n, 2)?;
        if w > n {
            return Err(Error::WeightRange {
                w,
                lo: 0,
                hi: n,
                rule: "weight cannot exceed length",
            });
        }
        Ok(WeightClassCursor {
            n,
            next: Some(low_mask(w)),
        })
    }

    pub fn is_exhausted(&self) -> bool {
        self.next.is_none()
    }

    /// Packed-form iterator; avoids building a `Word` per step.
    pub fn packed(self) -> impl Iterator<Item = u128> {
        let n = self.n;
        std::iter::successors(self.next, move |&x| next_same_weight(x, n))
    }
}

impl Iterator for WeightClassCursor {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next?;
        self.next = next_same_weight(current, self.n);
        Some(Word::binary(self.n, current).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w2(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn weights() {
        assert_eq!(Word::zero(7, 2).unwrap().weight(), 0);
        assert_eq!(Word::zero(7, 5).unwrap().weight(), 0);
        assert_eq!(w2("10110").weight(), 3);
        assert_eq!(Word::from_symbols(4, &[0, 3, 2, 0, 1]).unwrap().weight(), 3);
    }

    #[test]
    fn distances() {
        let u = w2("10110");
        assert_eq!(u.distance(&u).unwrap(), 0);
        assert_eq!(w2("1100").distance(&w2("0011")).unwrap(), 4);
        let a = Word::from_symbols(3, &[0, 1, 2]).unwrap();
        let b = Word::from_symbols(3, &[0, 2, 2]).unwrap();
        assert_eq!(a.distance(&b).unwrap(), 1);
        assert!(w2("1100").distance(&w2("110")).is_err());
        assert!(a.distance(&w2("010")).is_err());
    }

    #[test]
    fn addition() {
        assert_eq!(w2("1010").add(&w2("0110")).unwrap(), w2("1100"));
        let u = w2("1011");
        assert_eq!(u.add(&Word::zero(4, 2).unwrap()).unwrap(), u);
        let a = Word::from_symbols(4, &[3]).unwrap();
        let b = Word::from_symbols(4, &[2]).unwrap();
        assert_eq!(a.add(&b).unwrap().symbols(), vec![1]);
        assert!(u.add(&w2("101")).is_err());
    }

    #[test]
    fn binary_valued() {
        assert!(Word::from_symbols(4, &[0, 1, 1, 0])
            .unwrap()
            .is_binary_valued());
        assert!(!Word::from_symbols(4, &[0, 2, 1, 0])
            .unwrap()
            .is_binary_valued());
        assert!(w2("0110").is_binary_valued());
        assert_eq!(
            Word::from_symbols(4, &[0, 1, 1, 0]).unwrap().binary_image(),
            Some(0b0110)
        );
    }

    #[test]
    fn rendering_and_validation() {
        assert_eq!(w2("10110").to_string(), "10110");
        assert_eq!(w2("10110").bits(), Some(0b10110));
        assert_eq!(
            Word::from_symbols(4, &[0, 3, 2]).unwrap().to_string(),
            "032"
        );
        assert!(matches!(
            Word::parse("0120", 2),
            Err(Error::Symbol { position: 2, .. })
        ));
        assert!(Word::binary(3, 0b1000).is_err());
        assert!(Word::zero(0, 2).is_err());
        assert!(Word::zero(129, 2).is_err());
        assert!(Word::zero(4, 256).is_err());
        assert!(Word::zero(128, 2).is_ok());
    }

    #[test]
    fn weight_class_successor() {
        assert_eq!(next_in_weight_class(&w2("0011")).unwrap(), Some(w2("0101")));
        assert_eq!(next_in_weight_class(&w2("1100")).unwrap(), None);
        let start = w2("00011");
        let mut count = 1;
        let mut cur = start;
        while let Some(next) = next_in_weight_class(&cur).unwrap() {
            cur = next;
            count += 1;
        }
        assert_eq!(count, 10);
    }

    #[test]
    fn weight_class_matches_sorted_brute_force() {
        for n in 1..=14usize {
            for w in 0..=n {
                let brute: Vec<u128> = (0..1u128 << n)
                    .filter(|x| x.count_ones() as usize == w)
                    .collect();
                let cursor: Vec<u128> = WeightClassCursor::new(n, w).unwrap().packed().collect();
                assert_eq!(cursor, brute, "n={n} w={w}");
            }
        }
    }

    #[test]
    fn weight_class_counts_up_to_20() {
        for n in 15..=20usize {
            let mut binom = 1u64;
            for w in 0..=n {
                let words: Vec<u128> = WeightClassCursor::new(n, w).unwrap().packed().collect();
                assert_eq!(words.len() as u64, binom, "n={n} w={w}");
                assert!(words.windows(2).all(|p| p[0] < p[1]));
                assert!(words.iter().all(|x| x.count_ones() as usize == w));
                binom = binom * (n - w) as u64 / (w as u64 + 1);
            }
        }
    }

    #[test]
    fn weight_class_at_full_width() {
        let last: Vec<u128> = WeightClassCursor::new(128, 127).unwrap().packed().collect();
        assert_eq!(last.len(), 128);
        assert_eq!(*last.last().unwrap(), u128::MAX - 1);
        let mut full = WeightClassCursor::new(128, 128).unwrap();
        assert_eq!(full.next().unwrap().weight(), 128);
        assert!(full.next().is_none());
        assert!(full.is_exhausted());
        assert!(WeightClassCursor::new(4, 5).is_err());
    }

    #[test]
    fn colex_order() {
        assert_eq!(w2("0011").colex_cmp(&w2("0101")), Ordering::Less);
        let a = Word::from_symbols(3, &[0, 2, 1]).unwrap();
        let b = Word::from_symbols(3, &[1, 0, 0]).unwrap();
        assert_eq!(a.colex_cmp(&b), Ordering::Less);
    }

    fn binary_pair() -> impl Strategy<Value = (usize, u128, u128)> {
        (1usize..=128).prop_flat_map(|n| {
            let m = low_mask(n);
            (
                Just(n),
                any::<u128>().prop_map(move |x| x & m),
                any::<u128>().prop_map(move |x| x & m),
            )
        })
    }

    proptest! {
        #[test]
        fn binary_distance_is_weight_of_difference((n, a, b) in binary_pair()) {
            let u = Word::binary(n, a).unwrap();
            let v = Word::binary(n, b).unwrap();
            prop_assert_eq!(u.distance(&v).unwrap(), u.add(&v.negate()).unwrap().weight());
            prop_assert_eq!(u.add(&u).unwrap().weight(), 0);
            prop_assert_eq!(u.add(&v).unwrap(), v.add(&u).unwrap());
        }

        #[test]
        fn qary_addition_laws(
            q in 2u16..=9,
            raw in proptest::collection::vec((any::<u8>(), any::<u8>(), any::<u8>()), 1..20)
        ) {
            let pick = |f: fn(&(u8, u8, u8)) -> u8| -> Word {
                let s: Vec<u8> = raw.iter().map(|t| (f(t) as u16 % q) as u8).collect();
                Word::from_symbols(q, &s).unwrap()
            };
            let (a, b, c) = (pick(|t| t.0), pick(|t| t.1), pick(|t| t.2));
            prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
            prop_assert_eq!(
                a.add(&b).unwrap().add(&c).unwrap(),
                a.add(&b.add(&c).unwrap()).unwrap()
            );
            prop_assert_eq!(a.distance(&b).unwrap(), a.add(&b.negate()).unwrap().weight());
            prop_assert!(a.distance(&c).unwrap() <= a.distance(&b).unwrap() + b.distance(&c).unwrap());
        }
    }
}
