//! Text and JSON input formats.
//!
//! Substitution text:
//!
//! ```text
//! alphabet 2
//! 1 : 1 2
//! 2 : 1
//! ```
//!
//! A second number on the `alphabet` line gives a codomain size different
//! from the domain. `#` starts a comment. Input whose first non-blank
//! character is `{` is read as JSON instead.
//!
//! Matrix text: `rows cols` followed by the entries in row-major order.

use num_bigint::BigInt;

use crate::algebra::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::substitution::Substitution;

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn parse_usize(tok: &str, what: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("expected {what}, found `{tok}`")))
}

pub fn parse_substitution(input: &str) -> Result<Substitution> {
    if input.trim_start().starts_with('{') {
        return serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()));
    }
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty());
    let (_, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty substitution file".into()))?;
    let mut head = header.split_whitespace();
    if head.next() != Some("alphabet") {
        return Err(Error::Parse("first line must be `alphabet N`".into()));
    }
    let n = parse_usize(head.next().unwrap_or(""), "alphabet size")?;
    let m = match head.next() {
        Some(t) => parse_usize(t, "codomain size")?,
        None => n,
    };
    if head.next().is_some() {
        return Err(Error::Parse("trailing tokens after `alphabet`".into()));
    }
    let mut images: Vec<Option<Vec<i32>>> = vec![None; n];
    for (lineno, line) in lines {
        let (lhs, rhs) = line
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("line {lineno}: expected `i : word`")))?;
        let i = parse_usize(lhs.trim(), "letter index")?;
        if i == 0 || i > n {
            return Err(Error::Parse(format!(
                "line {lineno}: letter {i} outside alphabet of size {n}"
            )));
        }
        if images[i - 1].is_some() {
            return Err(Error::Parse(format!("line {lineno}: letter {i} defined twice")));
        }
        let w = rhs
            .split_whitespace()
            .map(|t| {
                t.parse::<i32>()
                    .map_err(|_| Error::Parse(format!("line {lineno}: bad letter `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        images[i - 1] = Some(w);
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, w)| w.ok_or_else(|| Error::Parse(format!("no image for letter {}", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    Substitution::from_indices(m, &images)
}

pub fn parse_matrix(input: &str) -> Result<IntMatrix> {
    let tokens: Vec<&str> = input
        .lines()
        .map(strip_comment)
        .flat_map(str::split_whitespace)
        .collect();
    if tokens.len() < 2 {
        return Err(Error::Parse("matrix file must start with `rows cols`".into()));
    }
    let rows = parse_usize(tokens[0], "row count")?;
    let cols = parse_usize(tokens[1], "column count")?;
    if rows == 0 || cols == 0 {
        return Err(Error::Parse("matrix dimensions must be positive".into()));
    }
    let body = &tokens[2..];
    if body.len() != rows * cols {
        return Err(Error::Parse(format!(
            "expected {} entries, found {}",
            rows * cols,
            body.len()
        )));
    }
    let entries = body
        .iter()
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad matrix entry `{t}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    let rows: Vec<Vec<BigInt>> = entries.chunks(cols).map(<[BigInt]>::to_vec).collect();
    IntMatrix::from_rows(&rows)
}
