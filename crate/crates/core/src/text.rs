//! Line-oriented text format shared by complete tables and presentation
//! matrices.
//!
//! ```text
//! # optional comment lines
//! n                       (or n=<n>)
//! u11 .. u1n  o11 .. o1n
//! ..
//! un1 .. unn  on1 .. onn
//! ```
//!
//! Each of the `n` rows lists the under block row followed by the over block
//! row. A lone `|` token between the blocks is accepted and ignored.

use std::fmt::Write;

use crate::error::{Error, Result};
use crate::Element;

/// Raw contents of a block-matrix file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blocks {
    pub n: usize,
    pub under: Vec<Element>,
    pub over: Vec<Element>,
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses a block matrix. Entries must lie in `1..=n`, or in `0..=n` when
/// `allow_unknown` is set.
pub fn parse_blocks(text: &str, allow_unknown: bool) -> Result<Blocks> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "missing size line"))?;
    let n: usize = header
        .strip_prefix("n=")
        .unwrap_or(header)
        .trim()
        .parse()
        .map_err(|_| parse_error(header_line, 1, format!("expected size, found `{header}`")))?;
    if n == 0 {
        return Err(parse_error(header_line, 1, "size must be positive"));
    }

    let mut under = Vec::with_capacity(n * n);
    let mut over = Vec::with_capacity(n * n);
    for row in 0..n {
        let (line_no, line) = lines.next().ok_or_else(|| {
            parse_error(header_line + row + 1, 1, format!("missing row {}", row + 1))
        })?;
        let mut entries = Vec::with_capacity(2 * n);
        for (column, token) in tokens(line) {
            if token == "|" {
                continue;
            }
            let value: Element = token.parse().map_err(|_| {
                parse_error(
                    line_no,
                    column,
                    format!("expected integer, found `{token}`"),
                )
            })?;
            let low = if allow_unknown { 0 } else { 1 };
            if value < low || value as usize > n {
                return Err(parse_error(
                    line_no,
                    column,
                    format!("entry {value} outside {low}..={n}"),
                ));
            }
            entries.push(value);
        }
        if entries.len() != 2 * n {
            return Err(parse_error(
                line_no,
                1,
                format!(
                    "row {} has {} entries, expected {}",
                    row + 1,
                    entries.len(),
                    2 * n
                ),
            ));
        }
        under.extend_from_slice(&entries[..n]);
        over.extend_from_slice(&entries[n..]);
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(parse_error(line_no, 1, "unexpected trailing row"));
    }
    Ok(Blocks { n, under, over })
}

fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut rest = line;
    let mut offset = 0;
    std::iter::from_fn(move || {
        let skipped = rest.len() - rest.trim_start().len();
        rest = &rest[skipped..];
        offset += skipped;
        if rest.is_empty() {
            return None;
        }
        let end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let token = &rest[..end];
        let column = offset + 1;
        rest = &rest[end..];
        offset += end;
        Some((column, token))
    })
}

/// Renders a block matrix in the canonical layout: size line, then one row
/// per element with single spaces between entries.
pub fn format_blocks(n: usize, under: &[Element], over: &[Element]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{n}");
    for row in 0..n {
        let entries = under[row * n..(row + 1) * n]
            .iter()
            .chain(&over[row * n..(row + 1) * n]);
        let line: Vec<String> = entries.map(|e| e.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}
