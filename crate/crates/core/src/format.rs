//! Plain-text matrix and certificate files.
//!
//! Matrix files:
//!
//! ```text
//! # comment lines start with '#'
//! field gf 5        # or: field q
//! size 4
//! 0 -1 -1 0
//! 1 0 0 -1
//! 1 0 0 2
//! 0 1 2 0
//! ```
//!
//! Everything after a `#` is ignored and blank lines are skipped. Entries are
//! integers, reduced into GF(p), or fractions `a/b`, accepted only over the
//! rationals. Certificate files hold two lines of `n` entries each: the row
//! scalars, then the column scalars.

use std::path::Path;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use crate::recognizer::{ScalingCertificate, SignCertificate};

struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn content_lines(input: &str) -> impl Iterator<Item = Line<'_>> {
    input.lines().enumerate().filter_map(|(i, raw)| {
        let text = raw.split('#').next().unwrap_or("");
        (!text.trim().is_empty()).then_some(Line {
            number: i + 1,
            text,
        })
    })
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (byte, ch) in text.char_indices().chain(std::iter::once((text.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                let column = text[..s].chars().count() + 1;
                out.push((column, &text[s..byte]));
                start = None;
            }
            (false, None) => start = Some(byte),
            _ => {}
        }
    }
    out
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn is_digits(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())
}

/// Parses one entry token (`-3`, `7`, `2/5`) into `field`.
pub fn parse_scalar(token: &str, field: FieldSpec) -> std::result::Result<Scalar, String> {
    let (numer, denom) = match token.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (token, None),
    };
    let unsigned = numer.strip_prefix(['-', '+']).unwrap_or(numer);
    if !is_digits(unsigned) {
        return Err(format!("invalid entry `{token}`"));
    }
    let numer: BigInt = numer.parse().map_err(|_| format!("invalid entry `{token}`"))?;
    match denom {
        None => Ok(field.from_bigint(&numer)),
        Some(_) if field != FieldSpec::Rationals => Err(format!(
            "fraction `{token}` is only allowed over the rationals, field is {field}"
        )),
        Some(d) => {
            if !is_digits(d) {
                return Err(format!("invalid denominator in `{token}`"));
            }
            let denom: BigInt = d.parse().map_err(|_| format!("invalid entry `{token}`"))?;
            field
                .from_fraction(&numer, &denom)
                .map_err(|_| format!("zero denominator in `{token}`"))
        }
    }
}

/// Parses a matrix file.
pub fn parse_matrix(input: &str) -> Result<Matrix> {
    let mut lines = content_lines(input);

    let line = lines
        .next()
        .ok_or_else(|| parse_error(1, 1, "missing `field` line"))?;
    let toks = tokens(line.text);
    let (col, keyword) = toks[0];
    if keyword != "field" {
        return Err(parse_error(line.number, col, format!("expected `field`, got `{keyword}`")));
    }
    let designator = toks[1..].iter().map(|t| t.1).collect::<Vec<_>>().join(" ");
    let field: FieldSpec = designator.parse().map_err(|e| match e {
        Error::Parse { message, .. } => {
            parse_error(line.number, toks.get(1).map_or(col, |t| t.0), message)
        }
        other => other,
    })?;

    let line = lines
        .next()
        .ok_or_else(|| parse_error(line.number + 1, 1, "missing `size` line"))?;
    let toks = tokens(line.text);
    let (col, keyword) = toks[0];
    if keyword != "size" {
        return Err(parse_error(line.number, col, format!("expected `size`, got `{keyword}`")));
    }
    let n: usize = match toks.as_slice() {
        [_, (c, value)] => value
            .parse()
            .map_err(|_| parse_error(line.number, *c, format!("invalid size `{value}`")))?,
        _ => {
            return Err(parse_error(
                line.number,
                col,
                "expected exactly one value after `size`",
            ))
        }
    };

    let mut entries = Vec::new();
    let mut last_line = line.number;
    for row in 0..n {
        let line = lines.next().ok_or_else(|| {
            parse_error(
                last_line + 1,
                1,
                format!("expected {n} rows, found {row}"),
            )
        })?;
        last_line = line.number;
        let toks = tokens(line.text);
        if toks.len() != n {
            return Err(parse_error(
                line.number,
                toks.get(n).map_or(1, |t| t.0),
                format!("expected {n} entries, found {}", toks.len()),
            ));
        }
        for (c, tok) in toks {
            entries.push(parse_scalar(tok, field).map_err(|m| parse_error(line.number, c, m))?);
        }
    }
    if let Some(extra) = lines.next() {
        let c = tokens(extra.text).first().map_or(1, |t| t.0);
        return Err(parse_error(extra.number, c, "unexpected content after the matrix"));
    }
    Matrix::from_scalars(field, n, n, entries)
}

/// Writes a square matrix in the file format. GF(p) entries use the
/// representative of smallest absolute value.
pub fn write_matrix(m: &Matrix) -> String {
    let mut out = format!("field {}\nsize {}\n", m.field(), m.rows());
    out.push_str(&m.to_string());
    out
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<Matrix> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

/// Parses a certificate file: row scalars on the first content line, column
/// scalars on the second, entries in `field`.
pub fn parse_certificate(input: &str, field: FieldSpec) -> Result<ScalingCertificate> {
    let mut lines = content_lines(input);
    let mut read_line = |what: &str, fallback: usize| -> Result<(usize, Vec<Scalar>)> {
        let line = lines
            .next()
            .ok_or_else(|| parse_error(fallback, 1, format!("missing {what} line")))?;
        let values = tokens(line.text)
            .into_iter()
            .map(|(c, tok)| {
                let s = parse_scalar(tok, field).map_err(|m| parse_error(line.number, c, m))?;
                if s.is_zero() {
                    return Err(parse_error(line.number, c, "certificate entries must be nonzero"));
                }
                Ok(s)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok((line.number, values))
    };
    let (row_line, row_scalars) = read_line("row scalar", 1)?;
    let (col_line, col_scalars) = read_line("column scalar", row_line + 1)?;
    if row_scalars.len() != col_scalars.len() {
        return Err(parse_error(
            col_line,
            1,
            format!(
                "row line has {} entries but column line has {}",
                row_scalars.len(),
                col_scalars.len()
            ),
        ));
    }
    if let Some(extra) = lines.next() {
        return Err(parse_error(extra.number, 1, "unexpected content after the certificate"));
    }
    Ok(ScalingCertificate {
        row_scalars,
        col_scalars,
    })
}

pub fn write_sign_certificate(cert: &SignCertificate) -> String {
    let line = |v: &[crate::recognizer::Sign]| {
        v.iter()
            .map(|s| s.as_i8().to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!("{}\n{}\n", line(&cert.row_signs), line(&cert.col_signs))
}

pub fn write_scaling_certificate(cert: &ScalingCertificate) -> String {
    let line = |v: &[Scalar]| {
        v.iter()
            .map(Scalar::balanced_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!("{}\n{}\n", line(&cert.row_scalars), line(&cert.col_scalars))
}
