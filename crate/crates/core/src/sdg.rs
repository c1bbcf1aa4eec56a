//! The `.sdg` text format for signed digraphs.
//!
//! ```text
//! # comment lines start with '#'
//! sdg n=3
//! 1 2 +
//! 2 1 -
//! ```
//!
//! The header gives the order; each further line is `tail head sign` with
//! 1-based vertices and sign `+` or `-`. Blank lines are skipped, fields are
//! whitespace separated, and CRLF line endings are accepted.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gsign::Sign;
use crate::signed::SignedDigraph;

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated fields with their 1-based starting columns.
fn fields(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_header(lineno: usize, line: &str) -> Result<usize> {
    match fields(line).as_slice() {
        [(_, "sdg"), (col, spec)] => {
            let value = spec
                .strip_prefix("n=")
                .ok_or_else(|| parse_error(lineno, *col, "expected `n=<order>`"))?;
            value
                .parse::<usize>()
                .map_err(|_| parse_error(lineno, col + 2, format!("invalid order `{value}`")))
        }
        [(col, word), ..] if *word != "sdg" => {
            Err(parse_error(lineno, *col, "expected header `sdg n=<order>`"))
        }
        _ => Err(parse_error(lineno, 1, "expected header `sdg n=<order>`")),
    }
}

fn parse_vertex(lineno: usize, col: usize, field: &str, n: usize) -> Result<usize> {
    let v: usize = field
        .parse()
        .map_err(|_| parse_error(lineno, col, format!("invalid vertex `{field}`")))?;
    if v == 0 || v > n {
        return Err(parse_error(
            lineno,
            col,
            format!("vertex {v} is out of range 1..={n}"),
        ));
    }
    Ok(v)
}

/// Parses `.sdg` text.
pub fn parse_sdg(text: &str) -> Result<SignedDigraph> {
    let mut order = None;
    let mut arcs: Vec<(usize, usize, Sign, usize)> = Vec::new();
    for (idx, raw) in text.split('\n').enumerate() {
        let lineno = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(n) = order else {
            let n = parse_header(lineno, line)?;
            crate::bits::check_order(n).map_err(|e| parse_error(lineno, 1, e.to_string()))?;
            order = Some(n);
            continue;
        };
        let f = fields(line);
        if f.len() != 3 {
            let col = f.get(3).map_or(line.len() + 1, |x| x.0);
            return Err(parse_error(lineno, col, "expected `<tail> <head> <+|->`"));
        }
        let tail = parse_vertex(lineno, f[0].0, f[0].1, n)?;
        let head = parse_vertex(lineno, f[1].0, f[1].1, n)?;
        let sign = match f[2].1 {
            "+" => Sign::Pos,
            "-" => Sign::Neg,
            other => {
                return Err(parse_error(
                    lineno,
                    f[2].0,
                    format!("invalid sign `{other}`"),
                ))
            }
        };
        if let Some(&(_, _, prev, _)) = arcs.iter().find(|a| a.0 == tail && a.1 == head) {
            let message = if prev == sign {
                format!("duplicate arc {tail} -> {head}")
            } else {
                format!(
                    "arc {tail} -> {head} appears with both signs; a sign pattern holds one sign per arc"
                )
            };
            return Err(parse_error(lineno, f[0].0, message));
        }
        arcs.push((tail, head, sign, lineno));
    }
    let n = order.ok_or_else(|| parse_error(1, 1, "missing header `sdg n=<order>`"))?;
    let arcs: Vec<_> = arcs.into_iter().map(|(u, v, s, _)| (u, v, s)).collect();
    SignedDigraph::from_arcs(n, &arcs)
}

/// Canonical text: header then arcs sorted by `(tail, head)`.
pub fn serialize_sdg(s: &SignedDigraph) -> String {
    let mut out = format!("sdg n={}\n", s.order());
    for (u, v, sign) in s.arcs() {
        writeln!(out, "{u} {v} {}", sign.symbol()).unwrap();
    }
    out
}
