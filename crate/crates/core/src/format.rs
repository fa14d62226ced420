//! The `freimat 1` text format.
//!
//! ```text
//! freimat 1
//! <rows> <cols> <ring>        ring is `int64` or `zp <p>`
//! <cols integers>             repeated `rows` times
//! ```
//!
//! Prime-field entries must already be reduced to `[0, p)`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Vector};
use crate::ring::RingSpec;

const MAGIC: &str = "freimat 1";

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));

    match lines.next() {
        Some((_, MAGIC)) => {}
        Some((n, other)) => return Err(parse_err(n, format!("expected `{MAGIC}`, got {other:?}"))),
        None => return Err(parse_err(1, "empty input")),
    }

    let (hline, header) = lines.next().ok_or_else(|| parse_err(2, "missing header"))?;
    let mut words = header.splitn(3, char::is_whitespace);
    let mut dim = |what: &str| -> Result<usize> {
        words
            .next()
            .and_then(|w| w.parse().ok())
            .ok_or_else(|| parse_err(hline, format!("bad {what} count")))
    };
    let rows = dim("row")?;
    let cols = dim("column")?;
    let ring: RingSpec = words
        .next()
        .ok_or_else(|| parse_err(hline, "missing ring"))?
        .parse()
        .map_err(|e| match e {
            Error::Parse { message, .. } => parse_err(hline, message),
            other => other,
        })?;

    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| parse_err(hline + 1 + r, format!("expected {rows} rows, found {r}")))?;
        let before = data.len();
        for word in line.split_whitespace() {
            let v: i64 = word
                .parse()
                .map_err(|_| parse_err(ln, format!("not an integer: {word:?}")))?;
            if !ring.contains(v) {
                return Err(parse_err(ln, format!("{v} is not reduced for {ring}")));
            }
            data.push(v);
        }
        if data.len() - before != cols {
            return Err(parse_err(
                ln,
                format!("expected {cols} entries, found {}", data.len() - before),
            ));
        }
    }
    if let Some((ln, _)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(parse_err(ln, "trailing data after last row"));
    }
    Matrix::new(rows, cols, ring, data)
}

pub fn write_matrix(m: &Matrix) -> String {
    let mut out = String::with_capacity(m.rows() * m.cols() * 4 + 32);
    let _ = writeln!(out, "{MAGIC}");
    let _ = writeln!(out, "{} {} {}", m.rows(), m.cols(), m.ring());
    for i in 0..m.rows() {
        let mut first = true;
        for v in m.row(i) {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}

/// Writes a vector as an `n x 1` matrix.
pub fn write_vector(v: &Vector) -> String {
    write_matrix(&Matrix::from_raw(v.len(), 1, v.ring(), v.as_slice().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example() {
        let m = parse_matrix("freimat 1\n2 3 zp 7\n0 1 2\n3 4 6\n").unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 3);
        assert_eq!(m.ring(), RingSpec::prime_field(7).unwrap());
        assert_eq!(m.row(1), &[3, 4, 6]);
    }

    #[test]
    fn writes_canonical_text() {
        let m = Matrix::from_rows(RingSpec::Int64Checked, &[vec![1, -2], vec![30, 4]]).unwrap();
        assert_eq!(write_matrix(&m), "freimat 1\n2 2 int64\n1 -2\n30 4\n");
    }

    #[test]
    fn rejects_bad_input() {
        let cases = [
            ("", 1),
            ("freimat 2\n1 1 int64\n0\n", 1),
            ("freimat 1\n1 x int64\n0\n", 2),
            ("freimat 1\n1 1 real\n0\n", 2),
            ("freimat 1\n2 2 int64\n1 2\n", 4),
            ("freimat 1\n1 2 int64\n1\n", 3),
            ("freimat 1\n1 1 zp 5\n5\n", 3),
            ("freimat 1\n1 1 zp 5\n-1\n", 3),
            ("freimat 1\n1 1 int64\n1\n2\n", 4),
        ];
        for (text, line) in cases {
            match parse_matrix(text) {
                Err(Error::Parse { line: got, .. }) => assert_eq!(got, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert_eq!(
            parse_matrix("freimat 1\n1 1 zp 6\n0\n").unwrap_err().kind(),
            "InvalidModulus"
        );
    }
}
