//! The line-oriented algebra file format.
//!
//! ```text
//! # comments and blank lines are ignored
//! field: Fp:7
//! dim: 3
//! row: 0 1 0
//! row: 0 0 1
//! row: 0 0 0
//! ```
//!
//! Row `i` lists `a_i1 ... a_in`, so `e_i^2 = sum_k a_ik e_k`. Keys appear in
//! this order. Scalars are `INT` or `INT/POSINT` over `Q` and `INT` over `Fp:<p>`.

use crate::algebra::EvolutionAlgebra;
use crate::error::{Error, Result};
use crate::field::{Field, FieldError, ParseError};

fn at(text: &str, offset: usize, message: impl Into<String>) -> Error {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    Error::Parse(ParseError::new(offset, format!("line {line}, column {col}: {}", message.into())))
}

/// Non-empty lines with comments removed, as `(byte offset, content)`.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line = raw.trim_end_matches(['\n', '\r']);
        let line = line.split('#').next().unwrap_or("");
        let lead = line.len() - line.trim_start().len();
        let trimmed = line.trim();
        if !trimmed.is_empty() {
            out.push((offset + lead, trimmed));
        }
        offset += raw.len();
    }
    out
}

fn value<'a>(text: &str, line: (usize, &'a str), key: &str) -> Result<(usize, &'a str)> {
    let (off, s) = line;
    let rest = s
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix(':'))
        .ok_or_else(|| at(text, off, format!("expected `{key}:`")))?;
    let lead = rest.len() - rest.trim_start().len();
    Ok((off + key.len() + 1 + lead, rest.trim()))
}

fn parse_field(text: &str, off: usize, s: &str) -> Result<Field> {
    if s == "Q" {
        return Ok(Field::Rationals);
    }
    let p = s.strip_prefix("Fp:").ok_or_else(|| at(text, off, format!("unknown field `{s}`")))?;
    let p: u64 = p.parse().map_err(|_| at(text, off + 3, format!("bad modulus `{p}`")))?;
    match Field::prime(p) {
        Ok(f) => Ok(f),
        Err(e @ FieldError::ForbiddenCharacteristic(_)) => Err(e.into()),
        Err(e) => Err(at(text, off + 3, e.to_string())),
    }
}

pub fn parse_algebra_file(text: &str) -> Result<EvolutionAlgebra> {
    let lines = content_lines(text);
    let end = text.len();
    let mut it = lines.into_iter();
    let first = it.next().ok_or_else(|| at(text, end, "missing `field:` line"))?;
    let (off, s) = value(text, first, "field")?;
    let field = parse_field(text, off, s)?;
    let second = it.next().ok_or_else(|| at(text, end, "missing `dim:` line"))?;
    let (off, s) = value(text, second, "dim")?;
    let dim: usize = s.parse().map_err(|_| at(text, off, format!("bad dimension `{s}`")))?;
    if dim == 0 {
        return Err(at(text, off, "dimension must be positive"));
    }
    let mut rows = Vec::with_capacity(dim);
    for line in it {
        let (off, s) = value(text, line, "row")?;
        if rows.len() == dim {
            return Err(at(text, line.0, format!("more than {dim} rows")));
        }
        let mut row = Vec::with_capacity(dim);
        let mut pos = 0;
        for tok in s.split_whitespace() {
            let start = pos + s[pos..].find(tok).expect("token is in the line");
            pos = start + tok.len();
            let v = field.parse_scalar(tok).map_err(|e| at(text, off + start + e.offset, e.message))?;
            row.push(v);
        }
        if row.len() != dim {
            return Err(Error::ShapeMismatch);
        }
        rows.push(row);
    }
    if rows.len() != dim {
        return Err(Error::ShapeMismatch);
    }
    EvolutionAlgebra::new(field, rows)
}

pub fn serialize_algebra_file(a: &EvolutionAlgebra) -> String {
    let mut out = format!("field: {}\ndim: {}\n", a.field(), a.dim());
    for i in 0..a.dim() {
        let cells: Vec<String> = a.row(i).iter().map(|s| s.to_string()).collect();
        out.push_str("row: ");
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
