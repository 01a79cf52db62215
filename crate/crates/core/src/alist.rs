//! Reader and writer for the MacKay `alist` sparse-matrix format.
//!
//! Layout, whitespace separated:
//!
//! ```text
//! N M
//! max_col_degree max_row_degree
//! <N column degrees>
//! <M row degrees>
//! <N column lists, 1-based row indices>
//! <M row lists, 1-based column indices>
//! ```
//!
//! Adjacency lists may be zero-padded up to the maximum degree or unpadded;
//! both forms are accepted. Output is always zero-padded.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, ParityCheckMatrix};

/// Parsed alist contents with 0-based adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlistDocument {
    pub n_cols: usize,
    pub n_rows: usize,
    pub max_col_deg: usize,
    pub max_row_deg: usize,
    pub col_degrees: Vec<usize>,
    pub row_degrees: Vec<usize>,
    pub col_adjacency: Vec<Vec<usize>>,
    pub row_adjacency: Vec<Vec<usize>>,
}

struct Tokens<'a> {
    inner: std::iter::Peekable<std::str::SplitWhitespace<'a>>,
    position: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            inner: text.split_whitespace().peekable(),
            position: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.position,
            message: message.into(),
        }
    }

    fn next_usize(&mut self, what: &str) -> Result<usize> {
        self.position += 1;
        let tok = self
            .inner
            .next()
            .ok_or_else(|| self.error(format!("unexpected end of input while reading {what}")))?;
        tok.parse().map_err(|_| {
            self.error(format!(
                "expected non-negative integer for {what}, found {tok:?}"
            ))
        })
    }

    fn skip_padding(&mut self, max: usize) {
        for _ in 0..max {
            if self.inner.peek() != Some(&"0") {
                break;
            }
            self.inner.next();
            self.position += 1;
        }
    }

    fn read_list(
        &mut self,
        degree: usize,
        max_deg: usize,
        bound: usize,
        what: &str,
    ) -> Result<Vec<usize>> {
        let mut list = Vec::with_capacity(degree);
        for _ in 0..degree {
            let idx = self.next_usize(what)?;
            if idx == 0 || idx > bound {
                return Err(self.error(format!("{what} index {idx} outside 1..={bound}")));
            }
            if list.contains(&(idx - 1)) {
                return Err(self.error(format!("{what} index {idx} repeated")));
            }
            list.push(idx - 1);
        }
        self.skip_padding(max_deg - degree);
        Ok(list)
    }
}

/// Tokenizes and validates an alist document without building the matrix.
pub fn parse_document(text: &str) -> Result<AlistDocument> {
    let mut t = Tokens::new(text);
    let n_cols = t.next_usize("column count")?;
    let n_rows = t.next_usize("row count")?;
    if n_cols == 0 || n_rows == 0 {
        return Err(t.error(format!(
            "matrix must be at least 1x1, got {n_rows}x{n_cols}"
        )));
    }
    let max_col_deg = t.next_usize("max column degree")?;
    let max_row_deg = t.next_usize("max row degree")?;

    let mut col_degrees = Vec::with_capacity(n_cols);
    for _ in 0..n_cols {
        let d = t.next_usize("column degree")?;
        if d > max_col_deg || d > n_rows {
            return Err(t.error(format!("column degree {d} exceeds maximum {max_col_deg}")));
        }
        col_degrees.push(d);
    }
    let mut row_degrees = Vec::with_capacity(n_rows);
    for _ in 0..n_rows {
        let d = t.next_usize("row degree")?;
        if d > max_row_deg || d > n_cols {
            return Err(t.error(format!("row degree {d} exceeds maximum {max_row_deg}")));
        }
        row_degrees.push(d);
    }

    let col_adjacency = col_degrees
        .iter()
        .map(|&d| t.read_list(d, max_col_deg, n_rows, "row"))
        .collect::<Result<Vec<_>>>()?;
    let row_adjacency = row_degrees
        .iter()
        .map(|&d| t.read_list(d, max_row_deg, n_cols, "column"))
        .collect::<Result<Vec<_>>>()?;

    if let Some(extra) = t.inner.next() {
        t.position += 1;
        return Err(t.error(format!("unexpected trailing token {extra:?}")));
    }

    let doc = AlistDocument {
        n_cols,
        n_rows,
        max_col_deg,
        max_row_deg,
        col_degrees,
        row_degrees,
        col_adjacency,
        row_adjacency,
    };
    doc.check_views()?;
    Ok(doc)
}

impl AlistDocument {
    fn check_views(&self) -> Result<()> {
        let from_cols: BTreeSet<(usize, usize)> = self
            .col_adjacency
            .iter()
            .enumerate()
            .flat_map(|(c, rows)| rows.iter().map(move |&r| (r, c)))
            .collect();
        let from_rows: BTreeSet<(usize, usize)> = self
            .row_adjacency
            .iter()
            .enumerate()
            .flat_map(|(r, cols)| cols.iter().map(move |&c| (r, c)))
            .collect();
        if let Some(&(r, c)) = from_cols.difference(&from_rows).next() {
            return Err(Error::Integrity(format!(
                "column {} lists row {} but row {} does not list column {}",
                c + 1,
                r + 1,
                r + 1,
                c + 1
            )));
        }
        if let Some(&(r, c)) = from_rows.difference(&from_cols).next() {
            return Err(Error::Integrity(format!(
                "row {} lists column {} but column {} does not list row {}",
                r + 1,
                c + 1,
                c + 1,
                r + 1
            )));
        }
        Ok(())
    }

    pub fn from_matrix(h: &ParityCheckMatrix) -> Self {
        let col_adjacency: Vec<Vec<usize>> =
            (0..h.cols()).map(|c| h.col_support(c).to_vec()).collect();
        let row_adjacency: Vec<Vec<usize>> =
            (0..h.rows()).map(|r| h.row_support(r).to_vec()).collect();
        let col_degrees: Vec<usize> = col_adjacency.iter().map(Vec::len).collect();
        let row_degrees: Vec<usize> = row_adjacency.iter().map(Vec::len).collect();
        Self {
            n_cols: h.cols(),
            n_rows: h.rows(),
            max_col_deg: col_degrees.iter().copied().max().unwrap_or(0),
            max_row_deg: row_degrees.iter().copied().max().unwrap_or(0),
            col_degrees,
            row_degrees,
            col_adjacency,
            row_adjacency,
        }
    }

    pub fn to_matrix(&self) -> Result<ParityCheckMatrix> {
        let mut m = Gf2Matrix::zeros(self.n_rows, self.n_cols);
        for (r, cols) in self.row_adjacency.iter().enumerate() {
            for &c in cols {
                m.set(r, c, true);
            }
        }
        ParityCheckMatrix::new(m)
    }

    /// Zero-padded text form.
    pub fn to_text(&self) -> String {
        fn line(out: &mut String, items: impl Iterator<Item = usize>) {
            let mut first = true;
            for v in items {
                if !first {
                    out.push(' ');
                }
                first = false;
                write!(out, "{v}").expect("writing to a String");
            }
            out.push('\n');
        }
        let mut out = String::new();
        writeln!(out, "{} {}", self.n_cols, self.n_rows).expect("writing to a String");
        writeln!(out, "{} {}", self.max_col_deg, self.max_row_deg).expect("writing to a String");
        line(&mut out, self.col_degrees.iter().copied());
        line(&mut out, self.row_degrees.iter().copied());
        for list in &self.col_adjacency {
            line(&mut out, padded(list, self.max_col_deg));
        }
        for list in &self.row_adjacency {
            line(&mut out, padded(list, self.max_row_deg));
        }
        out
    }
}

fn padded(list: &[usize], width: usize) -> impl Iterator<Item = usize> + '_ {
    list.iter()
        .map(|&i| i + 1)
        .chain(std::iter::repeat_n(0, width - list.len()))
}

pub fn parse_alist(text: &str) -> Result<ParityCheckMatrix> {
    parse_document(text)?.to_matrix()
}

pub fn write_alist(h: &ParityCheckMatrix) -> String {
    AlistDocument::from_matrix(h).to_text()
}
