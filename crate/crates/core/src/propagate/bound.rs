use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::target_distance;
use crate::error::{Error, Result};

/// Exact binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    // Each partial product C(n - k + i, i) is an integer.
    (1..=k).fold(BigUint::one(), |acc, i| acc * (n - k + i) / i)
}

/// ⌈a / b⌉ for positive b, as (a + b - 1) div b.
pub fn ceil_div(a: &BigUint, b: &BigUint) -> Result<BigUint> {
    if b.is_zero() {
        return Err(Error::Parameter("ceiling division by zero".into()));
    }
    Ok((a + b - 1u8) / b)
}

/// Which averaging argument produced a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// ⌈M·C(n,w)/q^n⌉ on A(n, d', w).
    Average,
    /// ⌈M·(C(n,w-1)+C(n,w))/q^n⌉ on A(n+1, d', w).
    ExtendedAverage,
}

impl BoundKind {
    pub fn tag(self) -> &'static str {
        match self {
            BoundKind::Average => "average",
            BoundKind::ExtendedAverage => "extended-average",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// An exact lower bound on A(target_n, d_prime, w) derived from a q-ary
/// code of length `n`, size `size` and minimum distance `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundResult {
    pub kind: BoundKind,
    pub n: usize,
    pub target_n: usize,
    pub q: u16,
    pub w: usize,
    pub size: BigUint,
    pub d: usize,
    pub d_prime: usize,
    pub value: BigUint,
}

impl BoundResult {
    /// `kind,n,q,w,d_prime,value` with n the length of the constructed code.
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.kind, self.target_n, self.q, self.w, self.d_prime, self.value
        )
    }
}

pub const BOUND_CSV_HEADER: &str = "theorem,n,q,w,d_prime,value";

fn space_size(n: usize, q: u16, size: &BigUint) -> Result<BigUint> {
    if n == 0 || q < 2 {
        return Err(Error::Parameter(format!(
            "need n >= 1 and q >= 2, got n={n} q={q}"
        )));
    }
    let total = BigUint::from(q).pow(n as u32);
    if size.is_zero() || *size > total {
        return Err(Error::Parameter(format!(
            "code size {size} outside 1..={q}^{n}"
        )));
    }
    Ok(total)
}

/// Averaging bound: some translate of a size-M code meets J^n(w) in at
/// least ⌈M·C(n,w)/q^n⌉ words.
pub fn avg_bound(n: usize, q: u16, size: &BigUint, d: usize, w: usize) -> Result<BoundResult> {
    let total = space_size(n, q, size)?;
    if w == 0 || w >= n {
        return Err(Error::WeightRange {
            w,
            lo: 1,
            hi: n.saturating_sub(1),
            rule: "the averaging bound needs 0 < w < n",
        });
    }
    let value = ceil_div(&(size * binomial(n as u64, w as u64)), &total)?;
    Ok(BoundResult {
        kind: BoundKind::Average,
        n,
        target_n: n,
        q,
        w,
        size: size.clone(),
        d,
        d_prime: target_distance(d),
        value,
    })
}

/// Averaging bound for the length-(n+1) extension: some translate meets
/// J^n(w-1) ∪ J^n(w) in at least ⌈M·(C(n,w-1)+C(n,w))/q^n⌉ words.
pub fn avg_bound_extended(
    n: usize,
    q: u16,
    size: &BigUint,
    d: usize,
    w: usize,
) -> Result<BoundResult> {
    let total = space_size(n, q, size)?;
    if w == 0 || w > n {
        return Err(Error::WeightRange {
            w,
            lo: 1,
            hi: n,
            rule: "the extended averaging bound needs 1 <= w <= n",
        });
    }
    let layers = binomial(n as u64, w as u64 - 1) + binomial(n as u64, w as u64);
    let value = ceil_div(&(size * layers), &total)?;
    Ok(BoundResult {
        kind: BoundKind::ExtendedAverage,
        n,
        target_n: n + 1,
        q,
        w,
        size: size.clone(),
        d,
        d_prime: target_distance(d),
        value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pow2(e: u32) -> BigUint {
        BigUint::one() << e
    }

    /// Pascal's triangle, additions only.
    fn pascal_row(n: usize) -> Vec<BigUint> {
        let mut row = vec![BigUint::one()];
        for _ in 0..n {
            let mut next = vec![BigUint::one(); row.len() + 1];
            for i in 1..row.len() {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        row
    }

    #[test]
    fn binomial_matches_pascal() {
        for n in 0..=70u64 {
            let row = pascal_row(n as usize);
            for k in 0..=n {
                assert_eq!(binomial(n, k), row[k as usize], "C({n},{k})");
            }
            assert!(binomial(n, n + 1).is_zero());
        }
        assert_eq!(binomial(63, 7), BigUint::from(553_270_671u64));
    }

    #[test]
    fn ceil_div_cases() {
        let c = |a: u64, b: u64| ceil_div(&BigUint::from(a), &BigUint::from(b)).unwrap();
        assert_eq!(c(10, 5), BigUint::from(2u8));
        assert_eq!(c(11, 5), BigUint::from(3u8));
        assert_eq!(c(0, 5), BigUint::zero());
        assert!(ceil_div(&BigUint::one(), &BigUint::zero()).is_err());
    }

    #[test]
    fn averaging_values() {
        let b = avg_bound(63, 2, &pow2(47), 7, 7).unwrap();
        assert_eq!(b.value, BigUint::from(8443u32));
        assert_eq!(b.d_prime, 8);
        assert_eq!(b.csv_row(), "average,63,2,7,8,8443");
        assert_eq!(
            avg_bound(62, 2, &pow2(46), 7, 7).unwrap().value,
            BigUint::from(7505u32)
        );
        let e = avg_bound_extended(63, 2, &pow2(47), 7, 7).unwrap();
        assert_eq!(e.value, BigUint::from(9480u32));
        assert_eq!(e.csv_row(), "extended-average,64,2,7,8,9480");
        assert_eq!(
            avg_bound_extended(63, 2, &pow2(52), 5, 5).unwrap().value,
            BigUint::from(3723u32)
        );
    }

    #[test]
    fn whole_space_gives_binomials() {
        for n in 2..=40usize {
            for q in [2u16, 3, 4] {
                let all = BigUint::from(q).pow(n as u32);
                for w in 1..n {
                    assert_eq!(
                        avg_bound(n, q, &all, 1, w).unwrap().value,
                        binomial(n as u64, w as u64)
                    );
                    assert_eq!(
                        avg_bound_extended(n, q, &all, 1, w).unwrap().value,
                        binomial(n as u64 + 1, w as u64)
                    );
                }
            }
        }
    }

    #[test]
    fn large_spaces_stay_exact() {
        // q^n = 2^128 overflows u128 arithmetic.
        let all = pow2(128);
        assert_eq!(
            avg_bound(128, 2, &all, 1, 64).unwrap().value,
            binomial(128, 64)
        );
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(avg_bound(10, 2, &pow2(3), 3, 0).is_err());
        assert!(avg_bound(10, 2, &pow2(3), 3, 10).is_err());
        assert!(avg_bound(10, 2, &pow2(11), 3, 4).is_err());
        assert!(avg_bound(10, 2, &BigUint::zero(), 3, 4).is_err());
        assert!(avg_bound_extended(10, 2, &pow2(3), 3, 0).is_err());
        assert!(avg_bound_extended(10, 2, &pow2(3), 3, 10).is_ok());
        assert!(avg_bound_extended(10, 2, &pow2(3), 3, 11).is_err());
    }
}
