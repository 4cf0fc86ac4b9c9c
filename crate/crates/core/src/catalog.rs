//! The TableText file format: plain-text Cayley tables.
//!
//! Layout:
//!
//! ```text
//! order 7
//! mul cyclic
//! {0} {1} {a} {b} {c} {d} {e}
//! {1} {a,c} {a,b,e} {1,d,e} {0,b,e} {b,c,d} {1,a,d}
//! ...
//! ```
//!
//! The first line gives the order. The second is either `mul cyclic`
//! (default, may be omitted) or `mul` followed by `n-1` rows of `n-1`
//! element names for the products of nonzero elements. Then `n` rows of `n`
//! brace-delimited cells for the addition table. Element names are
//! `0, 1, a, b, ...`; rendered cells list elements in that order. Blank
//! lines and `#` comments are accepted on input and never produced on
//! output, so `parse(render(h)) == h` exactly.

use thiserror::Error;

use crate::eset::{ESet, Elem, MAX_ORDER};
use crate::group::GroupTable;
use crate::hyperfield::HyperStruct;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CatalogError {
    #[error("parse error at line {line}, column {column}: {reason}")]
    Parse {
        line: usize,
        column: usize,
        reason: String,
    },
    #[error("unknown element {name:?} at line {line}")]
    UnknownElement { name: String, line: usize },
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },
}

fn parse_err(line: usize, column: usize, reason: impl Into<String>) -> CatalogError {
    CatalogError::Parse {
        line,
        column,
        reason: reason.into(),
    }
}

struct Lines<'a> {
    rest: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            rest: text.lines().enumerate(),
        }
    }

    /// Next non-blank, non-comment line as (1-based number, content).
    fn next_content(&mut self) -> Option<(usize, &'a str)> {
        for (i, raw) in self.rest.by_ref() {
            let line = raw.trim();
            if !line.is_empty() && !line.starts_with('#') {
                return Some((i + 1, line));
            }
        }
        None
    }
}

fn parse_elem(token: &str, line: usize) -> Result<Elem, CatalogError> {
    Elem::from_name(token).ok_or_else(|| CatalogError::UnknownElement {
        name: token.to_string(),
        line,
    })
}

fn parse_cell(token: &str, line: usize, column: usize, n: usize) -> Result<ESet, CatalogError> {
    let inner = token
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| parse_err(line, column, format!("cell {token:?} is not brace-delimited")))?;
    let mut set = ESet::EMPTY;
    if inner.is_empty() {
        return Ok(set);
    }
    for name in inner.split(',') {
        let e = parse_elem(name.trim(), line)?;
        if e.index() >= n {
            return Err(CatalogError::UnknownElement {
                name: name.trim().to_string(),
                line,
            });
        }
        set.insert(e);
    }
    Ok(set)
}

/// Parses a TableText document into an unverified [`HyperStruct`].
pub fn parse_table(text: &str) -> Result<HyperStruct, CatalogError> {
    let mut lines = Lines::new(text);
    let (ln, header) = lines
        .next_content()
        .ok_or_else(|| parse_err(0, 0, "empty document"))?;
    let n: usize = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["order", num] => num
            .parse()
            .map_err(|_| parse_err(ln, 7, format!("bad order {num:?}")))?,
        _ => return Err(parse_err(ln, 1, "expected `order <n>`")),
    };
    if !(2..=MAX_ORDER).contains(&n) {
        return Err(parse_err(ln, 7, format!("order {n} out of range 2..=16")));
    }

    let (ln, line) = lines
        .next_content()
        .ok_or_else(|| parse_err(ln, 1, "missing table body"))?;
    let (mul, mut pending) = if line == "mul cyclic" {
        (GroupTable::cyclic(n), None)
    } else if line == "mul" {
        let mut rows = Vec::with_capacity(n - 1);
        for _ in 1..n {
            let (ln, row) = lines
                .next_content()
                .ok_or_else(|| parse_err(ln, 1, "missing product row"))?;
            let tokens: Vec<&str> = row.split_whitespace().collect();
            if tokens.len() != n - 1 {
                return Err(CatalogError::ShapeMismatch {
                    expected: format!("{} products per row", n - 1),
                    found: format!("{} at line {ln}", tokens.len()),
                });
            }
            let mut elems = Vec::with_capacity(n - 1);
            for t in tokens {
                elems.push(parse_elem(t, ln)?);
            }
            rows.push(elems);
        }
        (GroupTable::from_products_unchecked(n, &rows), None)
    } else {
        // no mul block: cyclic by default, and this line is the first row
        (GroupTable::cyclic(n), Some((ln, line)))
    };

    let mut add = Vec::with_capacity(n * n);
    for row in 0..n {
        let (ln, line) = match pending.take() {
            Some(found) => found,
            None => lines.next_content().ok_or_else(|| {
                CatalogError::ShapeMismatch {
                    expected: format!("{n} addition rows"),
                    found: format!("{row}"),
                }
            })?,
        };
        let cells: Vec<&str> = line.split_whitespace().collect();
        if cells.len() != n {
            return Err(CatalogError::ShapeMismatch {
                expected: format!("{n} cells per row"),
                found: format!("{} at line {ln}", cells.len()),
            });
        }
        for (col, cell) in cells.iter().enumerate() {
            add.push(parse_cell(cell, ln, col + 1, n)?);
        }
    }
    if let Some((ln, extra)) = lines.next_content() {
        return Err(parse_err(ln, 1, format!("trailing content {extra:?}")));
    }
    Ok(HyperStruct::new(mul, add))
}

/// Renders a [`HyperStruct`] as canonical TableText. Deterministic:
/// `parse_table(render_table(h)) == h`.
pub fn render_table(h: &HyperStruct) -> String {
    let n = h.n();
    let mut out = format!("order {n}\n");
    if *h.mul_table() == GroupTable::cyclic(n) {
        out.push_str("mul cyclic\n");
    } else {
        out.push_str("mul\n");
        for x in h.nonzero() {
            let row: Vec<String> = h.nonzero().map(|y| h.mul(x, y).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    for x in h.elems() {
        let row: Vec<String> = h.elems().map(|y| h.add(x, y).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
