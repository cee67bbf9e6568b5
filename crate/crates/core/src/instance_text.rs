//! Plain-text instance format.
//!
//! ```text
//! # comment
//! m n
//! a_11 ... a_1n
//! ...
//! a_m1 ... a_mn
//! b_1 ... b_m
//! ```
//!
//! Entries are decimals or fractions `p/q`. `#` starts a comment anywhere on
//! a line; blank lines are ignored.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Unreduced system as read from text.
#[derive(Debug, Clone, PartialEq)]
pub struct RawSystem {
    pub a: DMatrix<f64>,
    pub b: DVector<f64>,
}

pub fn parse_entry(tok: &str) -> std::result::Result<f64, String> {
    let value = match tok.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.parse().map_err(|_| format!("bad numerator in {tok:?}"))?;
            let q: f64 = q
                .parse()
                .map_err(|_| format!("bad denominator in {tok:?}"))?;
            if q == 0.0 {
                return Err(format!("zero denominator in {tok:?}"));
            }
            p / q
        }
        None => tok.parse().map_err(|_| format!("bad number {tok:?}"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("non-finite value {tok:?}"))
    }
}

pub fn parse_instance(text: &str) -> Result<RawSystem> {
    let mut lines = text.lines().enumerate().filter_map(|(i, l)| {
        let content = l.split('#').next().unwrap_or("").trim();
        (!content.is_empty()).then_some((i + 1, content))
    });
    let err = |line: usize, message: String| Error::Parse { line, message };

    let (hl, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing \"m n\" header".into()))?;
    let dims: Vec<&str> = header.split_whitespace().collect();
    let [m, n] = dims.as_slice() else {
        return Err(err(hl, format!("expected \"m n\", found {header:?}")));
    };
    let m: usize = m
        .parse()
        .map_err(|_| err(hl, format!("bad row count {m:?}")))?;
    let n: usize = n
        .parse()
        .map_err(|_| err(hl, format!("bad column count {n:?}")))?;
    if m == 0 || n == 0 {
        return Err(err(hl, "dimensions must be positive".into()));
    }

    let mut read_row = |len: usize, what: &str| -> Result<Vec<f64>> {
        let (ln, content) = lines
            .next()
            .ok_or_else(|| err(0, format!("unexpected end of input, expected {what}")))?;
        let toks: Vec<&str> = content.split_whitespace().collect();
        if toks.len() != len {
            return Err(err(
                ln,
                format!("{what} has {} entries, expected {len}", toks.len()),
            ));
        }
        toks.iter()
            .map(|t| parse_entry(t).map_err(|m| err(ln, m)))
            .collect()
    };

    let mut entries = Vec::with_capacity(m * n);
    for i in 0..m {
        entries.extend(read_row(n, &format!("matrix row {}", i + 1))?);
    }
    let b = read_row(m, "right-hand side")?;
    if let Some((ln, _)) = lines.next() {
        return Err(err(ln, "trailing content after right-hand side".into()));
    }
    Ok(RawSystem {
        a: DMatrix::from_row_slice(m, n, &entries),
        b: DVector::from_vec(b),
    })
}

pub fn format_instance(a: &DMatrix<f64>, b: &DVector<f64>) -> String {
    let mut out = format!("{} {}\n", a.nrows(), a.ncols());
    for i in 0..a.nrows() {
        let row: Vec<String> = a.row(i).iter().map(|v| format!("{v:?}")).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    let rhs: Vec<String> = b.iter().map(|v| format!("{v:?}")).collect();
    out.push_str(&rhs.join(" "));
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_and_comments() {
        let raw = parse_instance(
            "# example\n3 4 # dims\n-20/29 1 31/87 0\n0 1 8/15 1\n\n60/29 0 463/435 -1\n1 2 3\n",
        )
        .unwrap();
        assert_eq!(raw.a.shape(), (3, 4));
        assert_eq!(raw.a[(0, 0)], -20.0 / 29.0);
        assert_eq!(raw.a[(2, 2)], 463.0 / 435.0);
        assert_eq!(raw.b.as_slice(), &[1.0, 2.0, 3.0]);
    }

    #[test]
    fn row_length_mismatch_reports_line() {
        let e = parse_instance("2 3\n1 0 0\n0 1\n1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e:?}");
    }

    #[test]
    fn bad_tokens() {
        assert!(parse_entry("1/0").is_err());
        assert!(parse_entry("abc").is_err());
        assert!(parse_entry("inf").is_err());
        assert_eq!(parse_entry("-3/4").unwrap(), -0.75);
        assert_eq!(parse_entry("2.5e-1").unwrap(), 0.25);
        let e = parse_instance("1 2\n1 1\n1\n7\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 4, .. }));
        assert!(matches!(
            parse_instance("").unwrap_err(),
            Error::Parse { .. }
        ));
    }

    #[test]
    fn format_round_trips() {
        let raw = parse_instance("2 3\n1/3 0 2\n0 1 -7/11\n1 2\n").unwrap();
        let text = format_instance(&raw.a, &raw.b);
        assert_eq!(parse_instance(&text).unwrap(), raw);
    }
}
