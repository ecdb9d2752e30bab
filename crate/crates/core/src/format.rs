//! Plain-text file formats.
//!
//! Matrix files:
//!
//! ```text
//! # comment lines start with '#'
//! 3 3 Z
//! 1 0 -1
//! 0 1 0
//! 1 0 1
//! ```
//!
//! The header is `rows cols domain`, with domain `Z` (integers) or `F<q>`
//! (for example `F4`). GF(q) entries are canonical encodings `0..q-1`; for
//! GF(4) with X² + X + 1 that is `0, 1, ω = 2, ω² = ω + 1 = 3`. Entries are
//! read as a whitespace-separated token stream after the header; writers
//! emit one row per line separated by single spaces.
//!
//! Group files list generators of a permutation automorphism group:
//!
//! ```text
//! n_gens n
//! <row permutation: n one-based images>
//! <column permutation: n one-based images>
//! ...
//! ```

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::gfq::FieldCtx;
use crate::matq::{FqMatrix, IntMatrix, Matrix};
use crate::orbit::PermAutGenerator;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

/// Parses the matrix text format.
pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    if parts.len() != 3 {
        return Err(parse_err(hline, "header must be `rows cols domain`"));
    }
    let rows: usize = parts[0].parse().map_err(|_| parse_err(hline, "bad row count"))?;
    let cols: usize = parts[1].parse().map_err(|_| parse_err(hline, "bad column count"))?;
    let field = match parts[2] {
        "Z" => None,
        d if d.starts_with('F') => {
            let q: u32 = d[1..].parse().map_err(|_| parse_err(hline, "bad field order"))?;
            Some(FieldCtx::new(q)?)
        }
        _ => return Err(parse_err(hline, "domain must be Z or F<q>")),
    };
    let mut ints = Vec::with_capacity(rows * cols);
    for (ln, line) in lines {
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| parse_err(ln, format!("bad entry `{tok}`")))?;
            if let Some(f) = &field {
                if v < 0 || v >= f.order() as i64 {
                    return Err(parse_err(ln, format!("entry {v} outside 0..{}", f.order())));
                }
            }
            ints.push(v);
        }
    }
    if ints.len() != rows * cols {
        return Err(parse_err(
            0,
            format!("expected {} entries, found {}", rows * cols, ints.len()),
        ));
    }
    Ok(match field {
        None => Matrix::Int(IntMatrix::new(rows, cols, ints)?),
        Some(f) => Matrix::Fq(FqMatrix::new(&f, rows, cols, ints.into_iter().map(|v| v as u8).collect())?),
    })
}

pub fn write_int_matrix(m: &IntMatrix) -> String {
    let mut s = format!("{} {} Z\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn write_fq_matrix(m: &FqMatrix) -> String {
    let mut s = format!("{} {} F{}\n", m.rows(), m.cols(), m.field().order());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        s.push_str(&row.join(" "));
        s.push('\n');
    }
    s
}

pub fn write_matrix(m: &Matrix) -> String {
    match m {
        Matrix::Int(m) => write_int_matrix(m),
        Matrix::Fq(m) => write_fq_matrix(m),
    }
}

pub fn read_matrix(path: &Path) -> Result<Matrix> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_matrix(&text)
}

/// Parses the group file format into validated permutation pairs.
pub fn parse_group(text: &str) -> Result<Vec<PermAutGenerator>> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
    let parts: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(hline, "bad header")))
        .collect::<Result<_>>()?;
    let [count, n] = parts[..] else {
        return Err(parse_err(hline, "header must be `n_gens n`"));
    };
    let mut perm = |what: &str| -> Result<Vec<usize>> {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("missing {what} permutation")))?;
        let images: Vec<usize> = line
            .split_whitespace()
            .map(|t| match t.parse::<usize>() {
                Ok(v) if v >= 1 => Ok(v - 1),
                _ => Err(parse_err(ln, format!("bad image `{t}`"))),
            })
            .collect::<Result<_>>()?;
        if images.len() != n {
            return Err(parse_err(ln, format!("expected {n} images, found {}", images.len())));
        }
        Ok(images)
    };
    let mut gens = Vec::with_capacity(count);
    for _ in 0..count {
        let row = perm("row")?;
        let col = perm("column")?;
        gens.push(PermAutGenerator::new(row, col)?);
    }
    Ok(gens)
}

pub fn write_group(gens: &[PermAutGenerator], n: usize) -> String {
    let mut s = format!("{} {}\n", gens.len(), n);
    for g in gens {
        for perm in [g.row_perm(), g.col_perm()] {
            let line: Vec<String> = perm.iter().map(|v| (v + 1).to_string()).collect();
            let _ = writeln!(s, "{}", line.join(" "));
        }
    }
    s
}

pub fn read_group(path: &Path) -> Result<Vec<PermAutGenerator>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_group(&text)
}

/// Parses a whitespace-separated word of canonical encodings.
pub fn parse_word(text: &str, q: u32) -> Result<Vec<u8>> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| match t.parse::<u32>() {
            Ok(v) if v < q => Ok(v as u8),
            _ => Err(Error::InvalidArgument(format!("bad symbol `{t}` for GF({q})"))),
        })
        .collect()
}

pub fn format_word(w: &[u8]) -> String {
    w.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_integer_matrix_with_comments() {
        let text = "# weighing matrix\n2 2 Z\n1 -1\n\n# second row\n1 1\n";
        let m = parse_matrix(text).unwrap();
        let expected = IntMatrix::from_rows(&[vec![1, -1], vec![1, 1]]).unwrap();
        assert_eq!(m, Matrix::Int(expected.clone()));
        assert_eq!(write_int_matrix(&expected), "2 2 Z\n1 -1\n1 1\n");
    }

    #[test]
    fn parse_field_matrix() {
        let m = parse_matrix("1 3 F4\n0 2 3\n").unwrap();
        let fm = m.as_fq().unwrap();
        assert_eq!(fm.field().order(), 4);
        assert_eq!(fm.row(0), &[0, 2, 3]);
        assert_eq!(write_matrix(&m), "1 3 F4\n0 2 3\n");
    }

    #[test]
    fn parse_errors() {
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("2 2 Q\n1 0 0 1").is_err());
        assert!(parse_matrix("2 2 Z\n1 0 0").is_err());
        assert!(parse_matrix("1 2 F3\n1 3").is_err());
        assert!(parse_matrix("1 2 F3\n-1 0").is_err());
        assert!(parse_matrix("1 1 F6\n0").is_err());
        assert!(parse_matrix("1 2 Z\n1 x").is_err());
    }

    #[test]
    fn group_roundtrip_and_errors() {
        let text = "1 3\n2 3 1\n2 3 1\n";
        let gens = parse_group(text).unwrap();
        assert_eq!(gens[0].row_perm(), &[1, 2, 0]);
        assert_eq!(write_group(&gens, 3), text);
        assert!(parse_group("1 3\n1 1 2\n1 2 3\n").is_err());
        assert!(parse_group("1 3\n1 2 3\n").is_err());
        assert!(parse_group("1 3\n0 1 2\n1 2 3\n").is_err());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("0 1, 2", 3).unwrap(), vec![0, 1, 2]);
        assert!(parse_word("3", 3).is_err());
        assert_eq!(format_word(&[1, 0, 2]), "1 0 2");
    }

    proptest! {
        #[test]
        fn int_matrix_text_roundtrip(rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
            let m = IntMatrix::from_fn(rows, cols, |i, j| ((seed >> ((i * cols + j) % 60)) as i64 % 7) - 3);
            let back = parse_matrix(&write_int_matrix(&m)).unwrap();
            prop_assert_eq!(back, Matrix::Int(m));
        }

        #[test]
        fn fq_matrix_text_roundtrip(q in prop::sample::select(vec![2u32, 3, 4, 5, 9, 25]), data in prop::collection::vec(any::<u8>(), 12)) {
            let f = FieldCtx::new(q).unwrap();
            let m = FqMatrix::new(&f, 3, 4, data.iter().map(|v| (*v as u32 % q) as u8).collect()).unwrap();
            let back = parse_matrix(&write_fq_matrix(&m)).unwrap();
            prop_assert_eq!(back, Matrix::Fq(m));
        }
    }
}
