//! Plain-text formats for functions and plane partitions.
//!
//! A function file starts with `q n` followed by `q^n` residues in
//! lexicographic argument order; a partition file starts with `q n m`
//! followed by one `basis: v, v, …; shift: v` line per plane. Both accept
//! `#` comments and arbitrary whitespace.

use crate::error::{Error, Result};
use crate::partitions::{AffinePlane, PlanePartition};
use crate::qalg::{pow_usize, Modulus, QFunction};
use std::fmt::Write;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn parse_numbers(line: usize, s: &str) -> Result<Vec<u64>> {
    s.split_whitespace()
        .map(|t| t.parse::<u64>().map_err(|_| parse_err(line, format!("not a non-negative integer: {t:?}"))))
        .collect()
}

pub fn parse_function(text: &str) -> Result<QFunction> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header \"q n\""))?;
    let head = parse_numbers(hl, header)?;
    let [q, n] = head[..] else {
        return Err(parse_err(hl, "header must be \"q n\""));
    };
    let q = u32::try_from(q).map_err(|_| parse_err(hl, "q too large"))?;
    let modulus = Modulus::new(q).map_err(|e| parse_err(hl, e.to_string()))?;
    let n = n as usize;
    let size = q.checked_pow(n as u32).filter(|&s| s <= 1 << 26).ok_or_else(|| parse_err(hl, "q^n too large"))? as usize;
    let mut table = Vec::with_capacity(size);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        for v in parse_numbers(ln, l)? {
            if v >= q as u64 {
                return Err(parse_err(ln, format!("residue {v} out of range for q = {q}")));
            }
            table.push(v as u32);
        }
    }
    if table.len() != size {
        return Err(parse_err(last, format!("expected {size} values, found {}", table.len())));
    }
    QFunction::new(modulus, n, table)
}

/// Header line, then the table in rows of `q^3` (q = 2) or `q^2` values.
pub fn write_function(f: &QFunction) -> String {
    let mut out = format!("{} {}\n", f.q(), f.arity());
    let width = pow_usize(f.q(), f.arity().min(if f.q() == 2 { 3 } else { 2 }));
    for chunk in f.table().chunks(width) {
        let line: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

fn parse_vector(line: usize, s: &str, q: u32, n: usize) -> Result<Vec<u32>> {
    let v = parse_numbers(line, s)?;
    if v.len() != n {
        return Err(parse_err(line, format!("vector {s:?} must have {n} coordinates")));
    }
    v.into_iter()
        .map(|x| if x < q as u64 { Ok(x as u32) } else { Err(parse_err(line, format!("residue {x} out of range"))) })
        .collect()
}

fn parse_plane(line: usize, s: &str, modulus: Modulus, n: usize) -> Result<AffinePlane> {
    let (basis, shift) = s.split_once(';').ok_or_else(|| parse_err(line, "expected \"basis: …; shift: …\""))?;
    let basis = basis.trim().strip_prefix("basis:").ok_or_else(|| parse_err(line, "expected \"basis:\""))?;
    let shift = shift.trim().strip_prefix("shift:").ok_or_else(|| parse_err(line, "expected \"shift:\""))?;
    let gens = basis
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| parse_vector(line, t, modulus.q(), n))
        .collect::<Result<Vec<_>>>()?;
    let point = parse_vector(line, shift, modulus.q(), n)?;
    AffinePlane::new(modulus, &gens, &point).map_err(|e| parse_err(line, e.to_string()))
}

/// Parse one partition. Planes are validated and put in canonical order.
pub fn parse_partition(text: &str) -> Result<PlanePartition> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| parse_err(1, "missing header \"q n m\""))?;
    let head = parse_numbers(hl, header)?;
    let [q, n, m] = head[..] else {
        return Err(parse_err(hl, "header must be \"q n m\""));
    };
    let q = u32::try_from(q).map_err(|_| parse_err(hl, "q too large"))?;
    let modulus = Modulus::new(q).map_err(|e| parse_err(hl, e.to_string()))?;
    let planes = lines
        .map(|(ln, l)| parse_plane(ln, l, modulus, n as usize))
        .collect::<Result<Vec<_>>>()?;
    PlanePartition::new(modulus, n as usize, m as usize, planes)
}

pub fn write_partition(p: &PlanePartition) -> String {
    let mut out = format!("{} {} {}\n", p.modulus().q(), p.n(), p.m());
    for plane in p.planes() {
        let _ = writeln!(out, "{plane}");
    }
    out
}
