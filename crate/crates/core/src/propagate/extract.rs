use super::{target_distance, Mode};
use crate::codebook::{Code, ExplicitCode, Family};
use crate::error::{Error, Result};
use crate::words::{Word, MAX_LEN};

/// Binary images of the binary-valued words of u + C, with their weights.
fn binary_translate(code: &Code, u: &Word) -> Result<Vec<(u128, usize)>> {
    let spec = code.spec();
    if u.len() != spec.n || u.q() != spec.q {
        return Err(Error::Mismatch {
            n1: spec.n,
            q1: spec.q,
            n2: u.len(),
            q2: u.q(),
        });
    }
    Ok(match code {
        Code::Linear(c) => {
            let shift = u.bits().expect("binary word");
            c.codewords_packed()
                .map(|x| {
                    let s = x ^ shift;
                    (s, s.count_ones() as usize)
                })
                .collect()
        }
        Code::Explicit(c) => {
            let mut out = Vec::new();
            for x in c.words() {
                if let Some(bits) = u.add(x)?.binary_image() {
                    out.push((bits, bits.count_ones() as usize));
                }
            }
            out
        }
    })
}

/// (u + C) ∩ J^n(w): a binary (n, 2⌊(d+1)/2⌋, w) constant-weight code.
pub fn extract_fixed(code: &Code, u: &Word, w: usize) -> Result<ExplicitCode> {
    let n = code.n();
    super::check_weights(&[w], n)?;
    let words = binary_translate(code, u)?
        .into_iter()
        .filter(|&(_, wt)| wt == w)
        .map(|(bits, _)| Word::binary(n, bits))
        .collect::<Result<Vec<_>>>()?;
    ExplicitCode::new(
        n,
        2,
        words,
        target_distance(code.spec().design_distance),
        Family::Explicit,
    )
}

/// Words of u + C of weight w-1 or w, each with one coordinate appended
/// (1 after weight w-1, 0 after weight w): a binary (n+1, 2⌊(d+1)/2⌋, w)
/// constant-weight code.
pub fn extract_extended(code: &Code, u: &Word, w: usize) -> Result<ExplicitCode> {
    let n = code.n();
    if w == 0 || w > n {
        return Err(Error::WeightRange {
            w,
            lo: 1,
            hi: n,
            rule: "the extension needs 1 <= w <= n",
        });
    }
    if n + 1 > MAX_LEN {
        return Err(Error::Parameter(format!(
            "extended length {} exceeds {MAX_LEN}",
            n + 1
        )));
    }
    let words = binary_translate(code, u)?
        .into_iter()
        .filter_map(|(bits, wt)| match wt {
            _ if wt == w => Some(bits << 1),
            _ if wt + 1 == w => Some(bits << 1 | 1),
            _ => None,
        })
        .map(|bits| Word::binary(n + 1, bits))
        .collect::<Result<Vec<_>>>()?;
    ExplicitCode::new(
        n + 1,
        2,
        words,
        target_distance(code.spec().design_distance),
        Family::Explicit,
    )
}

pub fn extract(code: &Code, u: &Word, w: usize, mode: Mode) -> Result<ExplicitCode> {
    match mode {
        Mode::Fixed => extract_fixed(code, u, w),
        Mode::Extend => extract_extended(code, u, w),
    }
}
