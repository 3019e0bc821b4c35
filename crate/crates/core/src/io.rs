//! Text formats: the versioned edge-list format and line-digraph label files.

use std::fmt::Write as _;

use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub const EDGE_LIST_MAGIC: &str = "#dregular-digraph v1";

/// Serializes a digraph. Edges are emitted sorted by `(u, v)`, one line each.
pub fn write_edge_list(d: &Digraph) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{EDGE_LIST_MAGIC}");
    let _ = writeln!(s, "n={} k={} edges={}", d.n(), d.k(), d.edge_count());
    for (u, v, m) in d.edges() {
        let _ = writeln!(s, "{u} {v} {m}");
    }
    s
}

fn parse_uint(tok: &str, line: usize) -> Result<u64> {
    // Canonical decimal only: no sign, no leading zeros.
    let ok = !tok.is_empty()
        && tok.bytes().all(|b| b.is_ascii_digit())
        && !(tok.len() > 1 && tok.starts_with('0'));
    if !ok {
        return Err(Error::Parse {
            line,
            msg: format!("expected a decimal integer, found `{tok}`"),
        });
    }
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("integer out of range: `{tok}`"),
    })
}

fn header_field(tok: Option<&str>, key: &str, line: usize) -> Result<u64> {
    let tok = tok.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing `{key}=`"),
    })?;
    let val = tok
        .strip_prefix(key)
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| Error::Parse {
            line,
            msg: format!("expected `{key}=<int>`, found `{tok}`"),
        })?;
    parse_uint(val, line)
}

/// Parses the edge-list format, rejecting any deviation from the canonical
/// layout (single spaces, sorted distinct edges, matching header counts).
pub fn parse_edge_list(text: &str) -> Result<Digraph> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let mut lines = body.split('\n').enumerate().map(|(i, l)| (i + 1, l));
    let (_, first) = lines.next().unwrap_or((1, ""));
    if first != EDGE_LIST_MAGIC {
        return Err(Error::Parse {
            line: 1,
            msg: format!("expected `{EDGE_LIST_MAGIC}`"),
        });
    }
    let (ln, header) = lines.next().ok_or(Error::Parse {
        line: 2,
        msg: "missing header".into(),
    })?;
    let mut toks = header.split(' ');
    let n = header_field(toks.next(), "n", ln)? as usize;
    let k = header_field(toks.next(), "k", ln)?;
    let count = header_field(toks.next(), "edges", ln)? as usize;
    if toks.next().is_some() {
        return Err(Error::Parse {
            line: ln,
            msg: "trailing fields in header".into(),
        });
    }
    let mut edges = Vec::with_capacity(count);
    let mut last: Option<(usize, usize)> = None;
    for (ln, l) in lines {
        if l.is_empty() {
            return Err(Error::Parse {
                line: ln,
                msg: "empty line".into(),
            });
        }
        if edges.len() == count {
            return Err(Error::Parse {
                line: ln,
                msg: "more edge lines than declared".into(),
            });
        }
        let parts: Vec<&str> = l.split(' ').collect();
        if parts.len() != 3 {
            return Err(Error::Parse {
                line: ln,
                msg: "expected `<u> <v> <mult>`".into(),
            });
        }
        let u = parse_uint(parts[0], ln)? as usize;
        let v = parse_uint(parts[1], ln)? as usize;
        let m = parse_uint(parts[2], ln)?;
        if m == 0 {
            return Err(Error::Parse {
                line: ln,
                msg: "zero multiplicity".into(),
            });
        }
        if last.is_some_and(|p| p >= (u, v)) {
            return Err(Error::Parse {
                line: ln,
                msg: "edges not strictly sorted by (u, v)".into(),
            });
        }
        last = Some((u, v));
        edges.push((u, v, m));
    }
    if edges.len() != count {
        return Err(Error::Parse {
            line: 2,
            msg: format!("header declares {count} edges, found {}", edges.len()),
        });
    }
    let d = Digraph::from_edge_list(n, &edges)?;
    if d.k() as u64 != k {
        return Err(Error::Parse {
            line: 2,
            msg: format!("header declares k={k}, digraph is {}-regular", d.k()),
        });
    }
    Ok(d)
}

/// Label file for a line digraph: one `<index> (v,w)` line per vertex.
pub fn write_line_labels(labels: &[(usize, usize)]) -> String {
    let mut s = String::new();
    for (i, (v, w)) in labels.iter().enumerate() {
        let _ = writeln!(s, "{i} ({v},{w})");
    }
    s
}
