//! Plain-text matrix and vector files.
//!
//! Matrix file: first line `d n`, then `d` lines of `n` whitespace-separated integers.
//! Vector file: a single line of whitespace-separated integers.

use num_bigint::BigInt;

use crate::{Error, Result};

fn parse_ints(line: &str) -> Result<Vec<BigInt>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
        })
        .collect()
}

pub fn parse_matrix(text: &str) -> Result<Vec<Vec<BigInt>>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty matrix file".into()))?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| Error::Parse(format!("bad header {header:?}")))?;
    let [d, n] = dims[..] else {
        return Err(Error::Parse(format!("header must be `d n`, got {header:?}")));
    };
    let mut rows = Vec::with_capacity(d);
    for i in 0..d {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("expected {d} rows, found {i}")))?;
        let row = parse_ints(line)?;
        if row.len() != n {
            return Err(Error::Parse(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        rows.push(row);
    }
    if let Some(extra) = lines.next() {
        return Err(Error::Parse(format!("trailing content {extra:?}")));
    }
    Ok(rows)
}

pub fn parse_vector(text: &str) -> Result<Vec<BigInt>> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let Some(line) = lines.next() else {
        return Ok(Vec::new());
    };
    if lines.next().is_some() {
        return Err(Error::Parse("vector file must hold a single line".into()));
    }
    parse_ints(line)
}

pub fn format_matrix(rows: &[Vec<BigInt>], ncols: usize) -> String {
    let mut out = format!("{} {}\n", rows.len(), ncols);
    for r in rows {
        out.push_str(&format_vector(r));
    }
    out
}

pub fn format_vector(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{}\n", parts.join(" "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "2 4\n1 1 1 1\n0 1 2 3\n";
        let m = parse_matrix(text).unwrap();
        assert_eq!(format_matrix(&m, 4), text);
        let v = parse_vector("10000 100 1\n").unwrap();
        assert_eq!(format_vector(&v), "10000 100 1\n");
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_matrix("2 3\n1 2 3\n").is_err());
        assert!(parse_matrix("1 3\n1 2\n").is_err());
        assert!(parse_matrix("1 2\n1 x\n").is_err());
        assert!(parse_matrix("1 2\n1 2\n3 4\n").is_err());
        assert!(parse_vector("1 2\n3\n").is_err());
    }
}
