//! Burmeister `.cxt` files.
//!
//! ```text
//! B
//!
//! 3
//! 2
//!
//! g1
//! g2
//! g3
//! a
//! b
//! X.
//! XX
//! ..
//! ```
//!
//! Incidence is `X` or `x`, non-incidence `.`. `\r\n` line ends are accepted.
//! Anything after the last row must be blank.

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::set::AttrSet;
use crate::universe::AttributeUniverse;

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Split<'a, char>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines {
            inner: text.split('\n').enumerate(),
            last: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        match self.inner.next() {
            Some((k, line)) => {
                self.last = k + 1;
                Ok(line.strip_suffix('\r').unwrap_or(line))
            }
            None => Err(Error::Parse {
                line: self.last + 1,
                message: format!("unexpected end of input, expected {what}"),
            }),
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.last,
            message: message.into(),
        }
    }

    fn expect_blank(&mut self) -> Result<()> {
        let line = self.next("a blank line")?;
        if !line.trim().is_empty() {
            return Err(self.err(format!("expected a blank line, found `{line}`")));
        }
        Ok(())
    }

    fn count(&mut self, what: &str) -> Result<usize> {
        let line = self.next(what)?;
        line.trim()
            .parse()
            .map_err(|_| self.err(format!("expected {what}, found `{line}`")))
    }
}

pub fn parse_cxt(text: &str) -> Result<FormalContext> {
    let mut lines = Lines::new(text);
    let header = lines.next("the `B` header")?;
    if header.trim() != "B" {
        return Err(lines.err(format!("expected `B`, found `{header}`")));
    }
    lines.expect_blank()?;
    let n_objects = lines.count("the number of objects")?;
    let n_attributes = lines.count("the number of attributes")?;
    lines.expect_blank()?;

    // Counts come from untrusted input: nothing is sized by them up front.
    let mut objects = Vec::new();
    for _ in 0..n_objects {
        objects.push(lines.next("an object name")?.to_owned());
    }
    let mut attributes = Vec::new();
    for _ in 0..n_attributes {
        attributes.push(lines.next("an attribute name")?.to_owned());
    }
    let universe = AttributeUniverse::new(attributes).map_err(|e| lines.err(e.to_string()))?;

    let mut rows = Vec::new();
    for g in objects {
        let line = lines.next("an incidence row")?;
        let cells: Vec<char> = line.trim_end().chars().collect();
        if cells.len() != n_attributes {
            return Err(lines.err(format!(
                "row for `{g}` has {} cells, expected {n_attributes}",
                cells.len()
            )));
        }
        let mut row = AttrSet::empty(n_attributes);
        for (m, cell) in cells.into_iter().enumerate() {
            match cell {
                'X' | 'x' => {
                    row.insert(m);
                }
                '.' => {}
                other => {
                    return Err(lines.err(format!("unexpected cell `{other}` in row for `{g}`")));
                }
            }
        }
        rows.push((g, row));
    }
    for (k, line) in lines.inner.by_ref() {
        if !line.trim().is_empty() {
            return Err(Error::Parse {
                line: k + 1,
                message: "unexpected content after the last row".into(),
            });
        }
    }
    FormalContext::new(universe, rows).map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })
}

pub fn parse_cxt_bytes(bytes: &[u8]) -> Result<FormalContext> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::Parse {
        line: 0,
        message: format!("not UTF-8: {e}"),
    })?;
    parse_cxt(text)
}

/// Writes `X`/`.` rows and ends with a newline. Names containing line breaks
/// cannot be represented and are rejected.
pub fn serialize_cxt(ctx: &FormalContext) -> Result<String> {
    let u = ctx.universe();
    let names = ctx.objects().iter().chain(u.names());
    if let Some(bad) = names.clone().find(|n| n.contains(['\n', '\r'])) {
        return Err(Error::Precondition(format!("name {bad:?} contains a line break")));
    }
    let mut out = format!("B\n\n{}\n{}\n\n", ctx.object_count(), u.len());
    for name in names {
        out.push_str(name);
        out.push('\n');
    }
    for row in ctx.rows() {
        out.extend((0..u.len()).map(|m| if row.contains(m) { 'X' } else { '.' }));
        out.push('\n');
    }
    Ok(out)
}
