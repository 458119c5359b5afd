// Plain-text code files.
//
// Generator matrix: header `n k q d`, then k rows of n digits.
// Explicit code:    header `n M q d`, then M words of n digits.
// Lines starting with `#` are comments wherever they appear; blank lines are
// skipped.

use std::fs;
use std::path::Path;

use super::{ExplicitCode, Family, LinearCode, MAX_ENUMERABLE_DIMENSION};
use crate::error::{Error, Result};
use crate::words::Word;

struct Lines<'a> {
    origin: &'a Path,
    inner: Box<dyn Iterator<Item = (usize, &'a str)> + 'a>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str, origin: &'a Path) -> Self {
        let inner = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        Lines {
            origin,
            inner: Box::new(inner),
        }
    }

    fn error(&self, line: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            path: self.origin.to_path_buf(),
            line,
            message: message.into(),
        }
    }

    fn header(&mut self, names: [&str; 4]) -> Result<(usize, [u64; 4])> {
        let (line, text) = self
            .inner
            .next()
            .ok_or_else(|| self.error(0, "missing header line"))?;
        let fields: Vec<&str> = text.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(self.error(
                line,
                format!(
                    "header must have 4 fields `{}`, found {}",
                    names.join(" "),
                    fields.len()
                ),
            ));
        }
        let mut values = [0u64; 4];
        for (i, f) in fields.iter().enumerate() {
            values[i] = f.parse().map_err(|_| {
                self.error(
                    line,
                    format!(
                        "header field `{}` = {f:?} is not a decimal integer",
                        names[i]
                    ),
                )
            })?;
        }
        Ok((line, values))
    }

    fn word(&mut self, n: usize, q: u16, what: &str) -> Result<Word> {
        let (line, text) = self
            .inner
            .next()
            .ok_or_else(|| self.error(0, format!("file ended before {what}")))?;
        let chars: Vec<char> = text.chars().collect();
        if chars.len() != n {
            return Err(self.error(
                line,
                format!("{what} has {} symbols, expected {n}", chars.len()),
            ));
        }
        let mut symbols = Vec::with_capacity(n);
        for (pos, ch) in chars.iter().enumerate() {
            match ch.to_digit(36) {
                Some(s) if s < q as u32 => symbols.push(s as u8),
                _ => {
                    return Err(self.error(
                        line,
                        format!("{what}: symbol {ch:?} at position {pos} is not in Z_{q}"),
                    ))
                }
            }
        }
        Word::from_symbols(q, &symbols).map_err(|e| self.error(line, e.to_string()))
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.inner.next() {
            None => Ok(()),
            Some((line, _)) => Err(self.error(line, "unexpected extra line")),
        }
    }
}

/// Parses a generator matrix. The rows must be independent and, when
/// 2^k is small enough to enumerate, the code's minimum distance must reach
/// the declared `d`.
pub fn parse_generator_matrix(text: &str, origin: &Path) -> Result<LinearCode> {
    let mut lines = Lines::new(text, origin);
    let (hline, [n, k, q, d]) = lines.header(["n", "k", "q", "d"])?;
    if q != 2 {
        return Err(lines.error(
            hline,
            format!("generator matrices must be binary, got q = {q}"),
        ));
    }
    if n == 0 || n > 128 || k == 0 || k > n || d == 0 || d > n {
        return Err(lines.error(
            hline,
            format!("header values out of range: n={n} k={k} d={d}"),
        ));
    }
    let (n, k, d) = (n as usize, k as usize, d as usize);
    let mut rows = Vec::with_capacity(k);
    for i in 0..k {
        rows.push(lines.word(n, 2, &format!("row {}", i + 1))?);
    }
    lines.expect_end()?;
    let name = origin
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "inline".into());
    let code = LinearCode::from_generator(&rows, Family::MatrixFile { name }, Some(d))?;
    if code.dimension() != k {
        return Err(Error::Invalid(format!(
            "{}: rows have rank {}, header declares k = {k}",
            origin.display(),
            code.dimension()
        )));
    }
    if k <= MAX_ENUMERABLE_DIMENSION {
        let measured = code.min_weight()?.unwrap_or(n);
        if measured < d {
            return Err(Error::Invalid(format!(
                "{}: minimum distance {measured} is below the declared {d}",
                origin.display()
            )));
        }
    }
    Ok(code)
}

pub fn load_generator_matrix(path: impl AsRef<Path>) -> Result<LinearCode> {
    let path = path.as_ref();
    parse_generator_matrix(&fs::read_to_string(path)?, path)
}

pub fn render_generator_matrix(code: &LinearCode) -> String {
    let spec = code.spec();
    let mut out = format!(
        "{} {} 2 {}\n",
        spec.n,
        code.dimension(),
        spec.design_distance
    );
    for row in code.rows() {
        out.push_str(&row.to_string());
        out.push('\n');
    }
    out
}

pub fn save_generator_matrix(code: &LinearCode, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, render_generator_matrix(code))?;
    Ok(())
}

pub fn parse_explicit(text: &str, origin: &Path) -> Result<ExplicitCode> {
    let mut lines = Lines::new(text, origin);
    let (hline, [n, m, q, d]) = lines.header(["n", "M", "q", "d"])?;
    if !(2..=255).contains(&q) || n == 0 || n > 128 || d == 0 {
        return Err(lines.error(
            hline,
            format!("header values out of range: n={n} q={q} d={d}"),
        ));
    }
    let mut words = Vec::with_capacity(m as usize);
    for i in 0..m {
        words.push(lines.word(n as usize, q as u16, &format!("word {}", i + 1))?);
    }
    lines.expect_end()?;
    ExplicitCode::new(n as usize, q as u16, words, d as usize, Family::Explicit)
}

pub fn load_explicit(path: impl AsRef<Path>) -> Result<ExplicitCode> {
    let path = path.as_ref();
    parse_explicit(&fs::read_to_string(path)?, path)
}

pub fn render_explicit(code: &ExplicitCode) -> String {
    let spec = code.spec();
    let mut out = format!(
        "{} {} {} {}\n",
        spec.n,
        code.len(),
        spec.q,
        spec.design_distance
    );
    for w in code.words() {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

pub fn save_explicit(code: &ExplicitCode, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, render_explicit(code))?;
    Ok(())
}
