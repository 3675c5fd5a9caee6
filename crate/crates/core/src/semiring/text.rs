//! Line-based semiring file format.
//!
//! ```text
//! elements: 0 1
//! zero: 0
//! one: 1
//! add:
//! 0 1
//! 1 1
//! mul:
//! 0 0
//! 0 1
//! ```
//!
//! Tokens are whitespace separated and table rows may be wrapped freely:
//! after `add:` (and `mul:`) the next `n²` tokens are read row-major.

use std::fmt::Write as _;

use super::FiniteSemiring;
use crate::error::{Error, Result};

/// Unvalidated label tables, as read from a file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawTables {
    pub labels: Vec<String>,
    pub zero: String,
    pub one: String,
    pub add: Vec<Vec<String>>,
    pub mul: Vec<Vec<String>>,
}

impl RawTables {
    pub fn validate(&self) -> Result<FiniteSemiring> {
        let index = |l: &String| {
            self.labels
                .iter()
                .position(|x| x == l)
                .ok_or_else(|| Error::Malformed(format!("unknown label `{l}`")))
        };
        let table = |t: &Vec<Vec<String>>| -> Result<Vec<Vec<usize>>> {
            t.iter().map(|row| row.iter().map(index).collect()).collect()
        };
        FiniteSemiring::new(
            self.labels.clone(),
            table(&self.add)?,
            table(&self.mul)?,
            index(&self.zero)?,
            index(&self.one)?,
        )
    }

    pub fn from_semiring(r: &FiniteSemiring) -> Self {
        let t = |tab: Vec<Vec<usize>>| {
            tab.into_iter()
                .map(|row| row.into_iter().map(|x| r.label(x).to_string()).collect())
                .collect()
        };
        RawTables {
            labels: r.labels().to_vec(),
            zero: r.label(r.zero()).to_string(),
            one: r.label(r.one()).to_string(),
            add: t(r.add_table()),
            mul: t(r.mul_table()),
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses the text format into unvalidated tables.
pub fn parse_raw(text: &str) -> Result<RawTables> {
    let mut tokens: Vec<(usize, &str)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        tokens.extend(line.split_whitespace().map(|t| (i + 1, t)));
    }
    let mut it = tokens.into_iter().peekable();
    let mut labels: Option<Vec<String>> = None;
    let mut zero = None;
    let mut one = None;
    let mut add = None;
    let mut mul = None;
    while let Some((line, tok)) = it.next() {
        match tok {
            "elements:" => {
                let mut ls = Vec::new();
                while let Some(&(l, t)) = it.peek() {
                    if l != line {
                        break;
                    }
                    ls.push(t.to_string());
                    it.next();
                }
                if ls.is_empty() {
                    return Err(parse_err(line, "empty element list"));
                }
                labels = Some(ls);
            }
            "zero:" | "one:" => {
                let (_, v) = it
                    .next_if(|&(l, _)| l == line)
                    .ok_or_else(|| parse_err(line, format!("`{tok}` needs a label")))?;
                if tok == "zero:" {
                    zero = Some(v.to_string());
                } else {
                    one = Some(v.to_string());
                }
            }
            "add:" | "mul:" => {
                let n = labels
                    .as_ref()
                    .ok_or_else(|| parse_err(line, "tables must follow the `elements:` line"))?
                    .len();
                let mut rows = Vec::with_capacity(n);
                for _ in 0..n {
                    let mut row = Vec::with_capacity(n);
                    for _ in 0..n {
                        let (_, t) = it
                            .next()
                            .ok_or_else(|| parse_err(line, format!("`{tok}` table is truncated")))?;
                        if t.ends_with(':') {
                            return Err(parse_err(line, format!("`{tok}` table is truncated")));
                        }
                        row.push(t.to_string());
                    }
                    rows.push(row);
                }
                if tok == "add:" {
                    add = Some(rows);
                } else {
                    mul = Some(rows);
                }
            }
            other => return Err(parse_err(line, format!("unexpected token `{other}`"))),
        }
    }
    let missing = |what: &str| parse_err(0, format!("missing `{what}`"));
    Ok(RawTables {
        labels: labels.ok_or_else(|| missing("elements:"))?,
        zero: zero.ok_or_else(|| missing("zero:"))?,
        one: one.ok_or_else(|| missing("one:"))?,
        add: add.ok_or_else(|| missing("add:"))?,
        mul: mul.ok_or_else(|| missing("mul:"))?,
    })
}

/// Parses and validates a semiring file.
pub fn parse_semiring(text: &str) -> Result<FiniteSemiring> {
    parse_raw(text)?.validate()
}

pub fn format_raw(raw: &RawTables) -> String {
    let width = raw.labels.iter().map(String::len).max().unwrap_or(1);
    let mut s = String::new();
    let _ = writeln!(s, "elements: {}", raw.labels.join(" "));
    let _ = writeln!(s, "zero: {}", raw.zero);
    let _ = writeln!(s, "one: {}", raw.one);
    for (name, t) in [("add", &raw.add), ("mul", &raw.mul)] {
        let _ = writeln!(s, "{name}:");
        for row in t {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            let _ = writeln!(s, "{}", cells.join(" ").trim_end());
        }
    }
    s
}

pub fn format_semiring(r: &FiniteSemiring) -> String {
    format_raw(&RawTables::from_semiring(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::error::Error;
    use crate::semiring::Axiom;

    const BOOL: &str = "elements: 0 1\nzero: 0\none: 1\nadd:\n0 1\n1 1\nmul:\n0 0\n0 1\n";

    #[test]
    fn parses_boolean() {
        let b = parse_semiring(BOOL).unwrap();
        assert_eq!(b, catalog::boolean());
    }

    #[test]
    fn whitespace_tolerant() {
        let text = "  elements:   0   1\n\n zero: 0\none:1 \nadd: 0 1 1 1\nmul:\n 0 0 0\n 1\n";
        // `one:1` is a single token, so it is rejected
        assert!(matches!(parse_semiring(text), Err(Error::Parse { .. })));
        let text = "  elements:   0   1\n\n zero: 0\none: 1 \nadd: 0 1 1 1\nmul:\n 0 0 0\n 1\n";
        assert_eq!(parse_semiring(text).unwrap(), catalog::boolean());
    }

    #[test]
    fn unknown_label_is_malformed() {
        let text = BOOL.replace("1 1\nmul", "1 x\nmul");
        assert!(matches!(parse_semiring(&text), Err(Error::Malformed(_))));
    }

    #[test]
    fn boolean_with_one_plus_one_zero_is_the_field_with_two_elements() {
        // Redefining 1 + 1 = 0 in B gives Z/2, which satisfies every axiom.
        let text = BOOL.replace("add:\n0 1\n1 1", "add:\n0 1\n1 0");
        assert_eq!(parse_semiring(&text).unwrap(), catalog::zmod(2));
        // Breaking only one side of the table is caught as non-commutativity.
        let text = BOOL.replace("add:\n0 1\n1 1", "add:\n0 1\n0 1");
        assert!(matches!(
            parse_semiring(&text),
            Err(Error::Axiom { axiom: Axiom::AdditiveIdentity, .. })
        ));
    }

    #[test]
    fn truncated_table() {
        let text = "elements: 0 1\nzero: 0\none: 1\nadd:\n0 1\n1\nmul:\n0 0\n0 1\n";
        assert!(matches!(parse_semiring(text), Err(Error::Parse { .. })));
    }

    #[test]
    fn format_then_parse() {
        for r in catalog::standard() {
            assert_eq!(parse_semiring(&format_semiring(&r.semiring)).unwrap(), r.semiring);
        }
    }
}
