//! Arithmetic in GF(2^m) and the polynomial machinery needed to build
//! binary BCH codes: cyclotomic cosets, minimal polynomials and generator
//! polynomials.

use std::fmt;

use crate::error::{Error, Result};

/// Primitive polynomials used for each extension degree, as bit masks
/// (bit i is the coefficient of x^i). Index 0 corresponds to m = 2.
///
/// | m  | modulus                         |
/// |----|---------------------------------|
/// | 2  | x^2 + x + 1                     |
/// | 3  | x^3 + x + 1                     |
/// | 4  | x^4 + x + 1                     |
/// | 5  | x^5 + x^2 + 1                   |
/// | 6  | x^6 + x + 1                     |
/// | 7  | x^7 + x + 1                     |
/// | 8  | x^8 + x^4 + x^3 + x^2 + 1       |
/// | 9  | x^9 + x^4 + 1                   |
/// | 10 | x^10 + x^3 + 1                  |
/// | 11 | x^11 + x^2 + 1                  |
/// | 12 | x^12 + x^6 + x^4 + x + 1        |
/// | 13 | x^13 + x^4 + x^3 + x + 1        |
/// | 14 | x^14 + x^10 + x^6 + x + 1       |
/// | 15 | x^15 + x + 1                    |
/// | 16 | x^16 + x^12 + x^3 + x + 1       |
pub const PRIMITIVE_MODULI: [u32; 15] = [
    0x7, 0xB, 0x13, 0x25, 0x43, 0x83, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443, 0x8003,
    0x1100B,
];

/// The field GF(2^m) with a fixed primitive modulus. Elements are `u32`
/// bit masks of width m in the polynomial basis; `alpha()` is the class of x.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldGF2m {
    m: u32,
    modulus: u32,
}

impl FieldGF2m {
    /// The field with the default primitive modulus for degree `m`.
    pub fn new(m: u32) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(Error::Parameter(format!(
                "extension degree {m} outside 2..=16"
            )));
        }
        Self::with_modulus(m, PRIMITIVE_MODULI[m as usize - 2])
    }

    /// Builds the field from an explicit modulus, rejecting anything that is
    /// not a primitive polynomial of degree `m`.
    pub fn with_modulus(m: u32, modulus: u32) -> Result<Self> {
        if !(2..=16).contains(&m) {
            return Err(Error::Parameter(format!(
                "extension degree {m} outside 2..=16"
            )));
        }
        if modulus >> m != 1 {
            return Err(Error::Parameter(format!(
                "modulus {modulus:#x} does not have degree {m}"
            )));
        }
        let field = FieldGF2m { m, modulus };
        let order = field.order();
        // α must return to 1 for the first time at exponent 2^m - 1.
        let mut x = 1u32;
        for j in 1..=order {
            x = field.mul_alpha(x);
            if x == 1 {
                if j == order {
                    return Ok(field);
                }
                break;
            }
        }
        Err(Error::Parameter(format!(
            "modulus {modulus:#x} is not primitive for m = {m}"
        )))
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Size of the multiplicative group, 2^m - 1.
    pub fn order(&self) -> u32 {
        (1 << self.m) - 1
    }

    pub fn alpha(&self) -> u32 {
        2
    }

    pub fn is_element(&self, a: u32) -> bool {
        a >> self.m == 0
    }

    #[inline]
    fn mul_alpha(&self, a: u32) -> u32 {
        let x = a << 1;
        if x >> self.m & 1 == 1 {
            x ^ self.modulus
        } else {
            x
        }
    }

    /// Product of two field elements: carry-less multiplication followed by
    /// reduction modulo the field polynomial.
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(self.is_element(a) && self.is_element(b));
        let mut acc = 0u64;
        let (a, mut b) = (a as u64, b);
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        let m = self.m as u64;
        let modulus = self.modulus as u64;
        for bit in (m..2 * m).rev() {
            if acc >> bit & 1 == 1 {
                acc ^= modulus << (bit - m);
            }
        }
        acc as u32
    }

    pub fn pow(&self, base: u32, mut exp: u64) -> u32 {
        let mut result = 1;
        let mut square = base;
        while exp > 0 {
            if exp & 1 == 1 {
                result = self.mul(result, square);
            }
            square = self.mul(square, square);
            exp >>= 1;
        }
        result
    }

    /// α^e.
    pub fn alpha_pow(&self, e: u64) -> u32 {
        self.pow(self.alpha(), e % self.order() as u64)
    }
}

/// Polynomial over GF(2), coefficients packed little-endian into 64-bit limbs
/// (bit i is the coefficient of x^i). The limb vector never has trailing
/// zero limbs, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly2 {
    limbs: Vec<u64>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly2 { limbs: vec![1] }
    }

    /// x^d + 1.
    pub fn x_pow_plus_one(d: usize) -> Self {
        let mut p = Poly2::zero();
        p.set(d);
        p.flip(0);
        p
    }

    pub fn from_mask(mask: u64) -> Self {
        let mut p = Poly2 { limbs: vec![mask] };
        p.normalize();
        p
    }

    /// Builds a polynomial from coefficients, lowest degree first.
    pub fn from_coefficients(coeffs: &[bool]) -> Self {
        let mut p = Poly2::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            if c {
                p.set(i);
            }
        }
        p
    }

    fn normalize(&mut self) {
        while self.limbs.last() == Some(&0) {
            self.limbs.pop();
        }
    }

    fn set(&mut self, i: usize) {
        let limb = i / 64;
        if self.limbs.len() <= limb {
            self.limbs.resize(limb + 1, 0);
        }
        self.limbs[limb] |= 1 << (i % 64);
    }

    fn flip(&mut self, i: usize) {
        let limb = i / 64;
        if self.limbs.len() <= limb {
            self.limbs.resize(limb + 1, 0);
        }
        self.limbs[limb] ^= 1 << (i % 64);
        self.normalize();
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let top = *self.limbs.last()?;
        Some((self.limbs.len() - 1) * 64 + 63 - top.leading_zeros() as usize)
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.limbs
            .get(i / 64)
            .is_some_and(|limb| limb >> (i % 64) & 1 == 1)
    }

    /// Coefficients from x^0 up to x^degree.
    pub fn coefficients(&self) -> Vec<bool> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|i| self.coeff(i)).collect(),
        }
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let len = self.limbs.len().max(other.limbs.len());
        let mut limbs: Vec<u64> = (0..len)
            .map(|i| self.limbs.get(i).unwrap_or(&0) ^ other.limbs.get(i).unwrap_or(&0))
            .collect();
        while limbs.last() == Some(&0) {
            limbs.pop();
        }
        Poly2 { limbs }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let (Some(da), Some(db)) = (self.degree(), other.degree()) else {
            return Poly2::zero();
        };
        let mut out = Poly2 {
            limbs: vec![0; (da + db) / 64 + 1],
        };
        for i in (0..=da).filter(|&i| self.coeff(i)) {
            for j in (0..=db).filter(|&j| other.coeff(j)) {
                out.limbs[(i + j) / 64] ^= 1 << ((i + j) % 64);
            }
        }
        out.normalize();
        out
    }

    /// Quotient and remainder of long division by a nonzero divisor.
    pub fn div_rem(&self, divisor: &Poly2) -> Result<(Poly2, Poly2)> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Parameter("division by the zero polynomial".into()))?;
        let mut rem = self.clone();
        let mut quot = Poly2::zero();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let shift = dr - dd;
            quot.set(shift);
            for j in (0..=dd).filter(|&j| divisor.coeff(j)) {
                let idx = j + shift;
                rem.limbs[idx / 64] ^= 1 << (idx % 64);
            }
            rem.normalize();
        }
        Ok((quot, rem))
    }

    /// Evaluates the polynomial at a field element (Horner's rule).
    pub fn eval(&self, field: &FieldGF2m, x: u32) -> u32 {
        let Some(d) = self.degree() else { return 0 };
        (0..=d)
            .rev()
            .fold(0, |acc, i| field.mul(acc, x) ^ self.coeff(i) as u32)
    }
}

impl fmt::Debug for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Some(d) = self.degree() else {
            return write!(f, "0");
        };
        let terms: Vec<String> = (0..=d)
            .rev()
            .filter(|&i| self.coeff(i))
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Partition of Z_n into orbits of s -> 2s mod n, for n = 2^m - 1.
///
/// Cosets are ordered by their least element, and each coset lists its
/// elements in orbit order starting from that leader.
pub fn cyclotomic_cosets(n: u32) -> Result<Vec<Vec<u32>>> {
    if n == 0 || (n as u64 + 1).count_ones() != 1 {
        return Err(Error::Parameter(format!("{n} is not of the form 2^m - 1")));
    }
    let mut seen = vec![false; n as usize];
    let mut cosets = Vec::new();
    for leader in 0..n {
        if seen[leader as usize] {
            continue;
        }
        let mut coset = Vec::new();
        let mut s = leader;
        while !seen[s as usize] {
            seen[s as usize] = true;
            coset.push(s);
            s = ((s as u64 * 2) % n as u64) as u32;
        }
        cosets.push(coset);
    }
    Ok(cosets)
}

fn coset_of(n: u32, e: u32) -> Vec<u32> {
    let mut coset = vec![e];
    let mut s = ((e as u64 * 2) % n as u64) as u32;
    while s != e {
        coset.push(s);
        s = ((s as u64 * 2) % n as u64) as u32;
    }
    coset
}

/// Minimal polynomial of α^e over GF(2): the product of (x - α^j) over the
/// cyclotomic coset of e.
pub fn minimal_polynomial(field: &FieldGF2m, e: u32) -> Result<Poly2> {
    let n = field.order();
    if e >= n {
        return Err(Error::Parameter(format!("exponent {e} not below {n}")));
    }
    // Coefficients in GF(2^m), lowest degree first.
    let mut coeffs: Vec<u32> = vec![1];
    for j in coset_of(n, e) {
        let root = field.alpha_pow(j as u64);
        let mut next = vec![0u32; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] ^= c;
            next[i] ^= field.mul(c, root);
        }
        coeffs = next;
    }
    let mut bits = Vec::with_capacity(coeffs.len());
    for (i, c) in coeffs.into_iter().enumerate() {
        match c {
            0 => bits.push(false),
            1 => bits.push(true),
            _ => {
                return Err(Error::Invalid(format!(
                    "minimal polynomial coefficient of x^{i} is not in GF(2)"
                )))
            }
        }
    }
    Ok(Poly2::from_coefficients(&bits))
}

/// Generator polynomial of the narrow-sense primitive binary BCH code of
/// length 2^m - 1 and designed distance `delta`: the lcm of the minimal
/// polynomials of α, α^2, ..., α^(delta-1).
pub fn bch_generator(m: u32, delta: u32) -> Result<Poly2> {
    let field = FieldGF2m::new(m)?;
    bch_generator_in(&field, delta)
}

pub fn bch_generator_in(field: &FieldGF2m, delta: u32) -> Result<Poly2> {
    let n = field.order();
    if !(2..=n).contains(&delta) {
        return Err(Error::Parameter(format!(
            "designed distance {delta} outside 2..={n}"
        )));
    }
    let mut covered = vec![false; n as usize];
    let mut g = Poly2::one();
    for e in 1..delta {
        if covered[e as usize] {
            continue;
        }
        for j in coset_of(n, e) {
            covered[j as usize] = true;
        }
        g = g.mul(&minimal_polynomial(field, e)?);
    }
    Ok(g)
}
